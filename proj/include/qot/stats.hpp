#pragma once

#include <cstdint>
#include <span>

namespace qot::stats {

// P[Bin(n, p) >= k] through the regularized incomplete beta function.
double binomial_tail_ge(std::uint64_t n, std::uint64_t k, double p);
// P[Bin(n, p) < k], from the complementary beta so that values near zero stay accurate.
double binomial_cdf_lt(std::uint64_t n, std::uint64_t k, double p);
double log_binomial_pmf(std::uint64_t n, std::uint64_t i, double p);

struct Interval {
  double low;
  double high;
};

// Wilson score interval at z standard deviations.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 3.0);

// |observed - expected| in units of the binomial standard deviation.
double binomial_z(std::uint64_t successes, std::uint64_t trials, double expected_p);

struct ChiSquareResult {
  double statistic;
  double degrees_of_freedom;
  double p_value;
};

// Homogeneity test of two count histograms over the same categories.
// Categories empty in both rows are dropped.
ChiSquareResult chi_square_homogeneity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

// Goodness of fit of observed counts against expected probabilities.
// Categories with expected count below min_expected are pooled.
ChiSquareResult chi_square_goodness(std::span<const std::uint64_t> observed, std::span<const double> probabilities,
                                    double min_expected = 5.0);

struct LinearFit {
  double slope;
  double intercept;
  double r_squared;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace qot::stats

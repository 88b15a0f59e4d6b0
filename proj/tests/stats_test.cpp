#include "qot/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace {

using namespace qot::stats;

// Direct summation with binomial coefficients built by Pascal's rule.
long double brute_tail_ge(unsigned n, unsigned k, long double p) {
  std::vector<long double> row{1.0L};
  for (unsigned i = 0; i < n; ++i) {
    std::vector<long double> next(row.size() + 1, 0.0L);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  long double s = 0;
  for (unsigned i = k; i <= n; ++i) s += row[i] * std::pow(p, i) * std::pow(1 - p, n - i);
  return s;
}

TEST(Binomial, MatchesSeventeenTermSum) {
  for (unsigned k = 0; k <= 17; ++k) {
    const double expected = static_cast<double>(brute_tail_ge(16, k, 0.25L));
    EXPECT_NEAR(binomial_tail_ge(16, k, 0.25), expected, 1e-14 + 1e-12 * expected) << k;
    EXPECT_NEAR(binomial_cdf_lt(16, k, 0.25), 1.0 - expected, 1e-13) << k;
  }
}

TEST(Binomial, MatchesLargerBruteForce) {
  for (unsigned k : {10U, 40U, 48U, 60U, 96U}) {
    const double expected = static_cast<double>(brute_tail_ge(256, k, 0.25L));
    EXPECT_NEAR(binomial_tail_ge(256, k, 0.25), expected, 1e-12 * std::max(expected, 1e-300) + 1e-300) << k;
  }
}

TEST(Binomial, TailsSumToOne) {
  for (unsigned n : {1U, 7U, 64U, 1024U}) {
    for (unsigned k = 0; k <= n; k += std::max(1U, n / 9)) {
      EXPECT_NEAR(binomial_tail_ge(n, k, 0.3) + binomial_cdf_lt(n, k, 0.3), 1.0, 1e-12);
    }
  }
}

TEST(Binomial, EdgeCases) {
  EXPECT_EQ(binomial_tail_ge(10, 0, 0.3), 1.0);
  EXPECT_EQ(binomial_tail_ge(10, 11, 0.3), 0.0);
  EXPECT_EQ(binomial_tail_ge(10, 3, 0.0), 0.0);
  EXPECT_EQ(binomial_tail_ge(10, 10, 1.0), 1.0);
  EXPECT_NEAR(std::exp(log_binomial_pmf(4, 2, 0.5)), 6.0 / 16, 1e-15);
  EXPECT_THROW(binomial_tail_ge(10, 3, 1.5), std::domain_error);
}

TEST(Wilson, ClosedFormAtZeroSuccesses) {
  const auto ci = wilson_interval(0, 100, 3.0);
  EXPECT_NEAR(ci.low, 0.0, 1e-15);
  EXPECT_NEAR(ci.high, 9.0 / 109.0, 1e-15);
}

TEST(Wilson, BracketsEstimate) {
  for (std::uint64_t s : {1U, 50U, 333U, 999U}) {
    const auto ci = wilson_interval(s, 1000);
    const double p = static_cast<double>(s) / 1000;
    EXPECT_LE(ci.low, p);
    EXPECT_GE(ci.high, p);
    EXPECT_GE(ci.low, 0.0);
    EXPECT_LE(ci.high, 1.0);
  }
  const auto empty = wilson_interval(0, 0);
  EXPECT_EQ(empty.low, 0.0);
  EXPECT_EQ(empty.high, 1.0);
}

TEST(BinomialZ, Units) {
  // sd = sqrt(400 * 0.5 * 0.5) = 10
  EXPECT_NEAR(binomial_z(220, 400, 0.5), 2.0, 1e-12);
  EXPECT_NEAR(binomial_z(180, 400, 0.5), 2.0, 1e-12);
}

TEST(ChiSquare, GoodnessPerfectFit) {
  const std::vector<std::uint64_t> obs{250, 250, 500};
  const std::vector<double> p{0.25, 0.25, 0.5};
  const auto r = chi_square_goodness(obs, p);
  EXPECT_NEAR(r.statistic, 0.0, 1e-12);
  EXPECT_NEAR(r.p_value, 1.0, 1e-12);
  EXPECT_EQ(r.degrees_of_freedom, 2.0);
}

TEST(ChiSquare, GoodnessKnownValue) {
  // (60-50)^2/50 + (40-50)^2/50 = 4 on one degree of freedom: p = erfc(sqrt 2)
  const std::vector<std::uint64_t> obs{60, 40};
  const std::vector<double> p{0.5, 0.5};
  const auto r = chi_square_goodness(obs, p);
  EXPECT_NEAR(r.statistic, 4.0, 1e-12);
  EXPECT_NEAR(r.p_value, std::erfc(std::sqrt(2.0)), 1e-10);
}

TEST(ChiSquare, HomogeneityDropsEmptyColumns) {
  const std::vector<std::uint64_t> a{10, 0, 20}, b{10, 0, 20};
  const auto r = chi_square_homogeneity(a, b);
  EXPECT_NEAR(r.statistic, 0.0, 1e-12);
  EXPECT_EQ(r.degrees_of_freedom, 1.0);
  const std::vector<std::uint64_t> c{100, 0}, d{0, 100};
  EXPECT_LT(chi_square_homogeneity(c, d).p_value, 1e-10);
}

TEST(LinearFit, ExactLine) {
  const std::vector<double> x{1, 2, 3, 4}, y{-1, -3, -5, -7};
  const auto f = linear_fit(x, y);
  EXPECT_NEAR(f.slope, -2.0, 1e-12);
  EXPECT_NEAR(f.intercept, 1.0, 1e-12);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
}

}  // namespace

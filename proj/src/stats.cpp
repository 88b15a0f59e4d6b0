#include "qot/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace qot::stats {

namespace {

double chi_square_survival(double statistic, double dof) {
  if (dof <= 0) return 1.0;
  const boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace

double log_binomial_pmf(std::uint64_t n, std::uint64_t i, double p) {
  if (i > n) return -std::numeric_limits<double>::infinity();
  if (p <= 0.0) return i == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return i == n ? 0.0 : -std::numeric_limits<double>::infinity();
  const double nn = static_cast<double>(n);
  const double ii = static_cast<double>(i);
  return std::lgamma(nn + 1) - std::lgamma(ii + 1) - std::lgamma(nn - ii + 1) + ii * std::log(p) +
         (nn - ii) * std::log1p(-p);
}

double binomial_tail_ge(std::uint64_t n, std::uint64_t k, double p) {
  if (p < 0.0 || p > 1.0) throw std::domain_error("binomial_tail_ge: p outside [0,1]");
  if (k == 0) return 1.0;
  if (k > n) return 0.0;
  if (p == 0.0 || p == 1.0) return p;
  // P[X >= k] = I_p(k, n - k + 1)
  return boost::math::ibeta(static_cast<double>(k), static_cast<double>(n - k + 1), p);
}

double binomial_cdf_lt(std::uint64_t n, std::uint64_t k, double p) {
  if (p < 0.0 || p > 1.0) throw std::domain_error("binomial_cdf_lt: p outside [0,1]");
  if (k == 0) return 0.0;
  if (k > n) return 1.0;
  if (p == 0.0 || p == 1.0) return 1.0 - p;
  return boost::math::ibetac(static_cast<double>(k), static_cast<double>(n - k + 1), p);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, std::min(phat, centre - half)), std::min(1.0, std::max(phat, centre + half))};
}

double binomial_z(std::uint64_t successes, std::uint64_t trials, double expected_p) {
  if (trials == 0) throw std::domain_error("binomial_z: no trials");
  const double n = static_cast<double>(trials);
  const double sd = std::sqrt(expected_p * (1 - expected_p) / n);
  const double diff = static_cast<double>(successes) / n - expected_p;
  if (sd == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(diff) / sd;
}

ChiSquareResult chi_square_homogeneity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) throw std::domain_error("chi_square_homogeneity: category mismatch");
  double total_a = 0, total_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total_a += static_cast<double>(a[i]);
    total_b += static_cast<double>(b[i]);
  }
  if (total_a == 0 || total_b == 0) throw std::domain_error("chi_square_homogeneity: empty sample");
  const double total = total_a + total_b;
  double statistic = 0.0;
  int used = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double col = static_cast<double>(a[i] + b[i]);
    if (col == 0) continue;
    ++used;
    const double ea = col * total_a / total;
    const double eb = col * total_b / total;
    statistic += std::pow(static_cast<double>(a[i]) - ea, 2) / ea + std::pow(static_cast<double>(b[i]) - eb, 2) / eb;
  }
  const double dof = std::max(0, used - 1);
  return {statistic, dof, chi_square_survival(statistic, dof)};
}

ChiSquareResult chi_square_goodness(std::span<const std::uint64_t> observed, std::span<const double> probabilities,
                                    double min_expected) {
  if (observed.size() != probabilities.size()) throw std::domain_error("chi_square_goodness: category mismatch");
  double total = 0;
  for (auto o : observed) total += static_cast<double>(o);
  if (total == 0) throw std::domain_error("chi_square_goodness: empty sample");
  // Pool consecutive sparse categories so every bin has enough expected mass.
  std::vector<double> obs_bins, exp_bins;
  double pending_obs = 0, pending_exp = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    pending_obs += static_cast<double>(observed[i]);
    pending_exp += probabilities[i] * total;
    if (pending_exp >= min_expected) {
      obs_bins.push_back(pending_obs);
      exp_bins.push_back(pending_exp);
      pending_obs = pending_exp = 0;
    }
  }
  if (pending_exp > 0 || pending_obs > 0) {
    if (exp_bins.empty()) {
      obs_bins.push_back(pending_obs);
      exp_bins.push_back(pending_exp);
    } else {
      obs_bins.back() += pending_obs;
      exp_bins.back() += pending_exp;
    }
  }
  double statistic = 0;
  for (std::size_t i = 0; i < obs_bins.size(); ++i) {
    if (exp_bins[i] <= 0) {
      if (obs_bins[i] > 0) return {std::numeric_limits<double>::infinity(), 0, 0.0};
      continue;
    }
    statistic += std::pow(obs_bins[i] - exp_bins[i], 2) / exp_bins[i];
  }
  const double dof = std::max<double>(0, static_cast<double>(obs_bins.size()) - 1);
  return {statistic, dof, chi_square_survival(statistic, dof)};
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::domain_error("linear_fit: need two or more paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw std::domain_error("linear_fit: x values are constant");
  const double slope = sxy / sxx;
  const double r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return {slope, my - slope * mx, r2};
}

}  // namespace qot::stats

#include "ccstat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace ccstat {

namespace bm = boost::math;

double norm_cdf(double x) { return bm::cdf(bm::normal_distribution<>(), x); }

double norm_quantile(double p) {
  return bm::quantile(bm::normal_distribution<>(), p);
}

double t_cdf(double x, double m) {
  return bm::cdf(bm::students_t_distribution<>(m), x);
}

double t_quantile(double p, double m) {
  return bm::quantile(bm::students_t_distribution<>(m), p);
}

double f_cdf(double x, double d1, double d2) {
  if (x <= 0.0) return 0.0;
  return bm::cdf(bm::fisher_f_distribution<>(d1, d2), x);
}

double f_quantile(double p, double d1, double d2) {
  return bm::quantile(bm::fisher_f_distribution<>(d1, d2), p);
}

double chisq_cdf(double x, double k) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return bm::cdf(bm::chi_squared_distribution<>(k), x);
}

double chisq_quantile(double p, double k) {
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  if (p <= 0.0) return 0.0;
  return bm::quantile(bm::chi_squared_distribution<>(k), p);
}

double binom_cdf(int k, int n, double p) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  return bm::cdf(bm::binomial_distribution<>(n, p), k);
}

double binom_pmf(int k, int n, double p) {
  if (k < 0 || k > n) return 0.0;
  return bm::pdf(bm::binomial_distribution<>(n, p), k);
}

double ks_uniform_statistic(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("ks: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double u = sample[i];
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - u);
    d = std::max(d, u - static_cast<double>(i) / n);
  }
  return d;
}

double ks_uniform_pvalue(std::vector<double> sample) {
  const double n = static_cast<double>(sample.size());
  const double x = std::sqrt(n) * ks_uniform_statistic(std::move(sample));
  // Kolmogorov tail series; converges in a handful of terms for x > 0.3.
  if (x < 1e-3) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

}  // namespace ccstat

#include "ccstat/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ccstat/errors.hpp"
#include "ccstat/optimize.hpp"
#include "ccstat/stats.hpp"

namespace ccstat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double convert_level(double level) {
  if (level < 0.0) level = 0.0;
  if (level >= 1.0) return -kInf;
  return -0.5 * chisq_quantile(level, 1.0);
}

// Linear interpolation of the curve's level at phi; the source grid must
// cover phi.
double interp_level(const ConfidenceCurve& cc, double phi) {
  if (phi < cc.grid.front() - 1e-12 || phi > cc.grid.back() + 1e-12)
    throw std::invalid_argument(
        "fuse: source grid does not cover the fusion grid");
  const auto it = std::lower_bound(cc.grid.begin(), cc.grid.end(), phi);
  if (it == cc.grid.begin()) return cc.level.front();
  if (it == cc.grid.end()) return cc.level.back();
  const std::size_t i = static_cast<std::size_t>(it - cc.grid.begin());
  const double x0 = cc.grid[i - 1], x1 = cc.grid[i];
  const double t = (x1 > x0) ? (phi - x0) / (x1 - x0) : 0.0;
  return cc.level[i - 1] * (1.0 - t) + cc.level[i] * t;
}

}  // namespace

std::vector<double> normal_conversion(const ConfidenceCurve& cc) {
  std::vector<double> out(cc.level.size());
  for (std::size_t i = 0; i < cc.level.size(); ++i)
    out[i] = convert_level(cc.level[i]);
  return out;
}

ConfidenceCurve fuse(const std::vector<SourceCC>& sources,
                     const std::vector<double>& grid) {
  if (sources.empty()) throw std::invalid_argument("fuse: no sources");
  if (grid.size() < 3) throw std::invalid_argument("fuse: grid too small");

  std::vector<double> sum(grid.size(), 0.0);
  for (const auto& src : sources) {
    if (src.curve.grid.size() != src.curve.level.size() ||
        src.curve.grid.size() < 2)
      throw std::invalid_argument("fuse: bad source curve '" + src.label + "'");
    for (std::size_t i = 0; i < grid.size(); ++i)
      sum[i] += convert_level(interp_level(src.curve, grid[i]));
  }
  const auto it = std::max_element(sum.begin(), sum.end());
  if (!std::isfinite(*it))
    throw numeric_error("fuse: sources have disjoint supports");
  const std::size_t imax = static_cast<std::size_t>(it - sum.begin());
  if (imax == 0 || imax == sum.size() - 1)
    throw numeric_error("fuse: fused maximizer on the grid boundary");

  ConfidenceCurve cc;
  cc.grid = grid;
  cc.level.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double dev = 2.0 * (*it - sum[i]);
    cc.level[i] = std::isfinite(dev) ? chisq_cdf(dev, 1.0) : 1.0;
  }
  cc.point_estimate = grid[imax];
  cc.cap = 1.0;
  return cc;
}

double ChisqSdCd::cdf(double sigma) const {
  if (sigma <= 0.0) return 0.0;
  const double ratio = m * sigma_hat * sigma_hat / (sigma * sigma);
  return 1.0 - chisq_cdf(ratio, m);
}

double ChisqSdCd::quantile(double u) const {
  if (u <= 0.0 || u >= 1.0)
    throw std::invalid_argument("chisq_sd_cd: u in (0,1)");
  return sigma_hat * std::sqrt(m / chisq_quantile(1.0 - u, m));
}

Interval ChisqSdCd::central_interval(double level) const {
  const double a = 0.5 * (1.0 - level);
  return Interval{quantile(a), quantile(1.0 - a), false, false};
}

ConfidenceDistribution ChisqSdCd::tabulate(
    const std::vector<double>& grid) const {
  ConfidenceDistribution cd;
  cd.grid = grid;
  cd.cdf.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) cd.cdf[i] = cdf(grid[i]);
  return cd;
}

ChisqSdCd chisq_sd_cd(double sigma_hat, int m) {
  if (!(sigma_hat > 0.0) || m < 1)
    throw std::invalid_argument("chisq_sd_cd: need sigma_hat > 0, m >= 1");
  return ChisqSdCd{sigma_hat, m};
}

double NonparamQuantileCd::cdf(double gamma) const {
  const int n = static_cast<int>(sorted.size());
  const auto k = static_cast<int>(
      std::upper_bound(sorted.begin(), sorted.end(), gamma) - sorted.begin());
  // Half-corrected discrete PIT of k = #{y_i <= gamma} under Bin(n, q).
  return binom_cdf(k - 1, n, q) + 0.5 * binom_pmf(k, n, q);
}

double NonparamQuantileCd::quantile(double u) const {
  const int n = static_cast<int>(sorted.size());
  // The cd is constant on [y_(j), y_(j+1)); return the first order statistic
  // whose plateau reaches u.
  for (int j = 1; j <= n; ++j) {
    const double at_j = binom_cdf(j - 1, n, q) + 0.5 * binom_pmf(j, n, q);
    if (at_j >= u) return sorted[static_cast<std::size_t>(j - 1)];
  }
  return kInf;
}

ConfidenceDistribution NonparamQuantileCd::tabulate(
    const std::vector<double>& grid) const {
  ConfidenceDistribution cd;
  cd.grid = grid;
  cd.cdf.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) cd.cdf[i] = cdf(grid[i]);
  return cd;
}

NonparamQuantileCd nonparam_quantile_cd(std::vector<double> sample, double q) {
  if (sample.size() < 10)
    throw std::invalid_argument("nonparam_quantile_cd: need >= 10 points");
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("nonparam_quantile_cd: q in (0,1)");
  std::sort(sample.begin(), sample.end());
  return NonparamQuantileCd{std::move(sample), q};
}

double NormalPriorCd::cdf(double gamma) const {
  return norm_cdf((gamma - mean) / sd);
}

double NormalPriorCd::quantile(double u) const {
  return mean + sd * norm_quantile(u);
}

ConfidenceDistribution NormalPriorCd::tabulate(
    const std::vector<double>& grid) const {
  ConfidenceDistribution cd;
  cd.grid = grid;
  cd.cdf.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) cd.cdf[i] = cdf(grid[i]);
  return cd;
}

NormalPriorCd normal_prior_cd(double mean, double sd) {
  if (!(sd > 0.0)) throw std::invalid_argument("normal_prior_cd: sd > 0");
  return NormalPriorCd{mean, sd};
}

ConfidenceCurve normal_quantile_profile_cc(const std::vector<double>& sample,
                                           double q,
                                           const std::vector<double>& grid) {
  if (sample.size() < 3)
    throw std::invalid_argument("normal_quantile_profile_cc: sample too small");
  const double c = norm_quantile(q);
  const double n = static_cast<double>(sample.size());
  const auto prof = [&](double gamma) {
    // Maximize -n log s - sum (y - gamma + c s)^2 / (2 s^2) over s > 0.
    const auto neg = [&](double log_s) {
      const double s = std::exp(log_s);
      const double xi = gamma - c * s;
      double q2 = 0.0;
      for (double y : sample) q2 += (y - xi) * (y - xi);
      return n * log_s + 0.5 * q2 / (s * s);
    };
    double mean = 0.0, var = 0.0;
    for (double y : sample) mean += y;
    mean /= n;
    for (double y : sample) var += (y - mean) * (y - mean);
    var /= n;
    const double ls0 = 0.5 * std::log(std::max(var, 1e-12));
    double fmin = 0.0;
    brent_minimize(neg, ls0 - 6.0, ls0 + 6.0, 1e-11, 300, &fmin);
    return -fmin - 0.5 * n * std::log(2.0 * M_PI);
  };
  return profile_cc(prof, grid);
}

}  // namespace ccstat

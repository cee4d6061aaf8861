#include "ccstat/extremes.hpp"

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
constexpr double kShapeZero = 1e-8;

}  // namespace

std::vector<double> transform(const std::vector<double>& raw, double offset) {
  std::vector<double> y(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    y[i] = offset - raw[i];
    if (!(y[i] > 0.0))
      throw std::invalid_argument("transform: non-positive exceedance");
  }
  return y;
}

double gpd_loglik(double a, double sigma, const std::vector<double>& y) {
  if (!(sigma > 0.0)) return -kInf;
  if (std::abs(a) < kShapeZero) {
    double ll = 0.0;
    for (double yi : y) ll += -std::log(sigma) - yi / sigma;
    return ll;
  }
  const double inv_a = 1.0 / a;
  double ll = 0.0;
  for (double yi : y) {
    const double u = 1.0 - a * yi / sigma;
    if (!(u > 0.0)) return -kInf;
    ll += -std::log(sigma) + (inv_a - 1.0) * std::log(u);
  }
  return ll;
}

GpdFit gpd_fit(const std::vector<double>& y) {
  if (y.size() < 5) throw std::invalid_argument("gpd_fit: sample too small");
  for (double v : y)
    if (!(v > 0.0)) throw std::invalid_argument("gpd_fit: y must be positive");

  const double n = static_cast<double>(y.size());
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : y) var += (v - mean) * (v - mean);
  var /= n;
  const double ymax = *std::max_element(y.begin(), y.end());

  const auto neg = [&](const Eigen::VectorXd& z) {
    return -gpd_loglik(z(0), std::exp(z(1)), y);
  };

  // Moment start plus a small grid of shape starts.
  std::vector<Eigen::Vector2d> starts;
  if (var > 0.0) {
    const double a0 = 0.5 * (mean * mean / var - 1.0);
    const double s0 = mean * (1.0 + a0);
    if (s0 > 0.0) starts.push_back({a0, std::log(s0)});
  }
  for (double a0 : {-0.5, -0.2, 0.0, 0.2, 0.5}) {
    const double s0 = std::max(mean * (1.0 + a0), 0.2 * mean);
    starts.push_back({a0, std::log(s0)});
  }

  Eigen::VectorXd best;
  double best_f = kInf;
  for (const auto& s : starts) {
    Eigen::VectorXd z0 = s;
    if (!std::isfinite(neg(z0))) continue;
    const OptimResult simplex = nelder_mead(neg, z0, 0.2);
    const OptimResult polish = bfgs_polish(neg, simplex.x, 1e-8);
    const double f = std::min(simplex.f, polish.f);
    const Eigen::VectorXd x = (polish.f <= simplex.f) ? polish.x : simplex.x;
    if (f < best_f) {
      best_f = f;
      best = x;
    }
  }
  if (!std::isfinite(best_f))
    throw numeric_error("gpd_fit: no admissible starting point");

  GpdFit fit;
  fit.a = best(0);
  fit.sigma = std::exp(best(1));
  fit.n = static_cast<int>(y.size());
  fit.loglik_max = -best_f;
  fit.support_ok = (fit.a <= 0.0) || (fit.sigma > fit.a * ymax);
  fit.boundary =
      fit.a > 0.0 && (fit.sigma - fit.a * ymax) < 1e-6 * fit.sigma;
  fit.converged = std::isfinite(best_f) && fit.support_ok;
  if (!fit.converged)
    throw numeric_error("gpd_fit: optimizer left the admissible region");
  return fit;
}

double season_exceed_prob(double a, double sigma, const SeasonModel& season) {
  if (!(sigma > 0.0) || !(season.lambda > 0.0) || !(season.y0 > 0.0))
    throw std::invalid_argument("season_exceed_prob: bad parameters");
  double survival;  // P(single exceedance >= y0)
  if (std::abs(a) < kShapeZero) {
    survival = std::exp(-season.y0 / sigma);
  } else {
    const double u = 1.0 - a * season.y0 / sigma;
    if (u <= 0.0) return a > 0.0 ? 0.0 : 1.0;  // beyond the support endpoint
    survival = std::pow(u, 1.0 / a);
  }
  return -std::expm1(-season.lambda * survival);
}

double constrained_sigma(double a, double p0, const SeasonModel& season) {
  const double alpha0 = -std::log1p(-p0);
  const double ratio = alpha0 / season.lambda;
  if (!(ratio > 0.0)) return kInf;
  if (std::abs(a) < kShapeZero) {
    const double denom = -std::log(ratio);
    return denom > 0.0 ? season.y0 / denom : -1.0;
  }
  const double denom = 1.0 - std::pow(ratio, a);
  if (denom == 0.0) return -1.0;
  return a * season.y0 / denom;
}

ConfidenceCurve profile_cc_p(const std::vector<double>& y,
                             const SeasonModel& season,
                             const std::vector<double>& p_grid) {
  if (p_grid.size() < 3)
    throw std::invalid_argument("profile_cc_p: need a grid");
  for (double p : p_grid)
    if (!(p > 0.0 && p < 1.0))
      throw std::invalid_argument("profile_cc_p: p grid inside (0,1)");

  const GpdFit fit = gpd_fit(y);
  const double p_hat = season_exceed_prob(fit.a, fit.sigma, season);

  ConfidenceCurve cc;
  cc.grid = p_grid;
  cc.level.resize(p_grid.size());
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    const double p0 = p_grid[i];
    const auto neg = [&](double a) {
      const double sigma = constrained_sigma(a, p0, season);
      if (!(sigma > 0.0) || !std::isfinite(sigma)) return kInf;
      return -gpd_loglik(a, sigma, y);
    };
    double fmin = kInf;
    multistart_minimize_1d(neg, -2.0, 2.0, 20, 1e-11, &fmin);
    const double dev = 2.0 * (fit.loglik_max + fmin);
    cc.level[i] = std::isfinite(fmin) ? chisq_cdf(std::max(0.0, dev), 1.0)
                                      : 1.0;  // empty feasible set
  }
  cc.point_estimate = p_hat;
  // p_hat = 0 is a genuine boundary (the fitted support endpoint can fall
  // below y0), so only a right-edge overshoot is an error.
  if (p_hat >= p_grid.back())
    throw numeric_error("profile_cc_p: p estimate beyond the grid");
  cc.cap = 1.0;
  return cc;
}

ConfidenceCurve shock_barometer(const ConfidenceCurve& cc_p) {
  ConfidenceCurve out;
  const std::size_t n = cc_p.grid.size();
  out.grid.resize(n);
  out.level.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.grid[i] = 100.0 * (1.0 - cc_p.grid[n - 1 - i]);
    out.level[i] = cc_p.level[n - 1 - i];
  }
  out.point_estimate = 100.0 * (1.0 - cc_p.point_estimate);
  out.cap = cc_p.cap;
  return out;
}

}  // namespace ccstat

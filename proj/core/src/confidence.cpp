#include "ccstat/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccstat/errors.hpp"
#include "ccstat/stats.hpp"

namespace ccstat {

std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("linspace: need >= 2 points");
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    out[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  return out;
}

namespace {

void check_cd(const ConfidenceDistribution& cd) {
  if (cd.grid.size() != cd.cdf.size() || cd.grid.size() < 2)
    throw std::invalid_argument("cd: bad tabulation");
  for (std::size_t i = 0; i < cd.cdf.size(); ++i) {
    if (cd.cdf[i] < -1e-12 || cd.cdf[i] > 1.0 + 1e-12)
      throw std::invalid_argument("cd: cdf outside [0,1]");
    if (i > 0 && cd.cdf[i] < cd.cdf[i - 1] - 1e-12)
      throw std::invalid_argument("cd: cdf not non-decreasing");
    if (i > 0 && cd.grid[i] <= cd.grid[i - 1])
      throw std::invalid_argument("cd: grid not increasing");
  }
}

}  // namespace

ConfidenceCurve cc_from_cd(const ConfidenceDistribution& cd) {
  check_cd(cd);
  ConfidenceCurve cc;
  cc.grid = cd.grid;
  cc.level.resize(cd.cdf.size());
  for (std::size_t i = 0; i < cd.cdf.size(); ++i)
    cc.level[i] = std::abs(1.0 - 2.0 * std::clamp(cd.cdf[i], 0.0, 1.0));

  // Median by linear interpolation of the cdf through 1/2.
  cc.point_estimate = cd.grid.front();
  for (std::size_t i = 1; i < cd.cdf.size(); ++i) {
    if (cd.cdf[i] >= 0.5) {
      const double c0 = cd.cdf[i - 1], c1 = cd.cdf[i];
      if (c1 > c0) {
        const double t = (0.5 - c0) / (c1 - c0);
        cc.point_estimate = cd.grid[i - 1] + t * (cd.grid[i] - cd.grid[i - 1]);
      } else {
        cc.point_estimate = cd.grid[i];
      }
      break;
    }
  }
  return cc;
}

Interval interval(const ConfidenceCurve& cc, double level) {
  if (cc.grid.empty()) throw std::invalid_argument("interval: empty grid");
  if (level < 0.0 || level >= 1.0)
    throw std::invalid_argument("interval: level must be in [0,1)");
  Interval out;
  if (level == 0.0) {
    out.lo = out.hi = cc.point_estimate;
    return out;
  }
  const std::size_t n = cc.grid.size();
  std::size_t first = n, last = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (cc.level[i] <= level) {
      if (first == n) first = i;
      last = i;
    }
  }
  if (first == n) {
    // Grid never dips below the level: degenerate at the point estimate.
    out.lo = out.hi = cc.point_estimate;
    return out;
  }
  if (first == 0) {
    out.lo = cc.grid.front();
    out.lo_unbounded = true;
  } else {
    const double l0 = cc.level[first - 1], l1 = cc.level[first];
    const double t = (l0 - level) / (l0 - l1);
    out.lo = cc.grid[first - 1] + t * (cc.grid[first] - cc.grid[first - 1]);
  }
  if (last == n - 1) {
    out.hi = cc.grid.back();
    out.hi_unbounded = true;
  } else {
    const double l0 = cc.level[last], l1 = cc.level[last + 1];
    const double t = (level - l0) / (l1 - l0);
    out.hi = cc.grid[last] + t * (cc.grid[last + 1] - cc.grid[last]);
  }
  if (level >= cc.cap) out.hi_unbounded = true;
  return out;
}

ConfidenceCurve profile_cc_from_values(const std::vector<double>& focus_grid,
                                       const std::vector<double>& loglik) {
  if (focus_grid.size() != loglik.size() || focus_grid.size() < 3)
    throw std::invalid_argument("profile_cc: bad grid");
  const auto it = std::max_element(loglik.begin(), loglik.end());
  const std::size_t imax = static_cast<std::size_t>(it - loglik.begin());
  const double lmax = *it;
  if (!std::isfinite(lmax))
    throw numeric_error("profile_cc: non-finite profile maximum");
  if (imax == 0 || imax == loglik.size() - 1)
    throw numeric_error("profile_cc: maximizer on the grid boundary");
  const double lmin = *std::min_element(loglik.begin(), loglik.end());
  if (lmax - lmin < 1e-12)
    throw numeric_error("profile_cc: flat profile log-likelihood");

  ConfidenceCurve cc;
  cc.grid = focus_grid;
  cc.level.resize(loglik.size());
  for (std::size_t i = 0; i < loglik.size(); ++i) {
    const double dev = 2.0 * (lmax - loglik[i]);
    cc.level[i] = std::isfinite(dev) ? chisq_cdf(dev, 1.0) : 1.0;
  }
  cc.point_estimate = focus_grid[imax];
  cc.cap = 1.0;
  return cc;
}

ConfidenceCurve profile_cc(const std::function<double(double)>& profile_loglik,
                           const std::vector<double>& focus_grid) {
  std::vector<double> ll(focus_grid.size());
  for (std::size_t i = 0; i < focus_grid.size(); ++i)
    ll[i] = profile_loglik(focus_grid[i]);
  return profile_cc_from_values(focus_grid, ll);
}

double profile_cd_value(double focus, double focus_hat, double deviance) {
  const double root = std::sqrt(std::max(0.0, deviance));
  return norm_cdf(focus >= focus_hat ? root : -root);
}

ConfidenceCurve cc_rho(const GlsArModel& model, const Eigen::VectorXd& y,
                       const std::vector<double>& rho_grid) {
  return profile_cc(
      [&](double rho) { return profile_loglik_given_rho(model, y, rho); },
      rho_grid);
}

}  // namespace ccstat

#include "ccstat/prediction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccstat/errors.hpp"
#include "ccstat/stats.hpp"

namespace ccstat {

LinearFitSummary linear_fit_summary(const GappedSeries& series) {
  const std::size_t n = series.size();
  if (n < 4) throw std::invalid_argument("linear fit: need n >= 4");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = static_cast<double>(series.times[i]);
  const CenteredCovariate cov = center(x);

  double sxy = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < n; ++i) ybar += series.values[i];
  ybar /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    sxy += (x[i] - cov.xbar) * (series.values[i] - ybar);

  LinearFitSummary fit;
  fit.n = static_cast<int>(n);
  fit.m = static_cast<int>(n) - 2;
  fit.xbar = cov.xbar;
  fit.m_n = cov.m_n;
  fit.bhat = sxy / cov.m_n;
  fit.ahat = ybar;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r =
        series.values[i] - fit.ahat - fit.bhat * (x[i] - cov.xbar);
    rss += r * r;
  }
  fit.sigmahat = std::sqrt(rss / fit.m);
  if (!(fit.sigmahat > 0.0))
    throw numeric_error("linear fit: zero residual variance");
  return fit;
}

double PredictionCd::cdf(double y_new) const {
  return t_cdf((y_new - center) / scale, m);
}

double PredictionCd::quantile(double u) const {
  return center + scale * t_quantile(u, m);
}

Interval PredictionCd::central_interval(double level) const {
  const double a = 0.5 * (1.0 - level);
  return Interval{quantile(a), quantile(1.0 - a), false, false};
}

ConfidenceDistribution PredictionCd::tabulate(double lo, double hi,
                                              int points) const {
  ConfidenceDistribution cd;
  cd.grid = linspace(lo, hi, points);
  cd.cdf.resize(cd.grid.size());
  for (std::size_t i = 0; i < cd.grid.size(); ++i) cd.cdf[i] = cdf(cd.grid[i]);
  return cd;
}

PredictionCd predict_cd(const LinearFitSummary& fit, double x_new) {
  const double u = x_new - fit.xbar;
  PredictionCd cd;
  cd.center = fit.ahat + fit.bhat * u;
  cd.scale = fit.sigmahat *
             std::sqrt(1.0 + 1.0 / fit.n + u * u / fit.m_n);
  cd.m = fit.m;
  return cd;
}

CrossingCap crossing_cap(const LinearFitSummary& fit) {
  CrossingCap out;
  out.t_stat = std::sqrt(fit.m_n) * fit.bhat / fit.sigmahat;
  out.cap = f_cdf(out.t_stat * out.t_stat, 1.0, fit.m);
  return out;
}

double crossing_estimate(const LinearFitSummary& fit, double y0) {
  if (!(fit.bhat > 0.0))
    throw numeric_error("crossing: estimated slope is not positive");
  return fit.xbar + (y0 - fit.ahat) / fit.bhat;
}

double crossing_level(const LinearFitSummary& fit, double y0, double x0) {
  const double u = x0 - fit.xbar;
  const double num = y0 - fit.ahat - fit.bhat * u;
  const double var =
      fit.sigmahat * fit.sigmahat * (1.0 / fit.n + u * u / fit.m_n);
  return f_cdf(num * num / var, 1.0, fit.m);
}

ConfidenceCurve crossing_cc(const LinearFitSummary& fit, double y0,
                            const std::vector<double>& x0_grid) {
  if (x0_grid.size() < 2)
    throw std::invalid_argument("crossing_cc: need a grid");
  const double estimate = crossing_estimate(fit, y0);
  ConfidenceCurve cc;
  cc.grid = x0_grid;
  cc.level.resize(x0_grid.size());
  for (std::size_t i = 0; i < x0_grid.size(); ++i)
    cc.level[i] = crossing_level(fit, y0, x0_grid[i]);
  cc.point_estimate = estimate;
  cc.cap = crossing_cap(fit).cap;
  return cc;
}

Interval crossing_interval(const LinearFitSummary& fit, double y0,
                           double level) {
  if (level <= 0.0 || level >= 1.0)
    throw std::invalid_argument("crossing_interval: level in (0,1)");
  const double estimate = crossing_estimate(fit, y0);
  const double q = f_quantile(level, 1.0, fit.m);
  const double s2 = fit.sigmahat * fit.sigmahat;
  // {y0 - ahat - bhat u}^2 = q s2 (1/n + u^2/M) as a quadratic in u.
  const double ya = y0 - fit.ahat;
  const double a = fit.bhat * fit.bhat - q * s2 / fit.m_n;
  const double b = -2.0 * fit.bhat * ya;
  const double c = ya * ya - q * s2 / fit.n;

  Interval out;
  const double disc = b * b - 4.0 * a * c;
  const double uhat = estimate - fit.xbar;
  if (a > 0.0) {
    // level below the cap: a bounded interval around the estimate
    const double root = std::sqrt(std::max(0.0, disc));
    out.lo = fit.xbar + (-b - root) / (2.0 * a);
    out.hi = fit.xbar + (-b + root) / (2.0 * a);
    return out;
  }
  // At or above the cap the sub-level set is unbounded; keep the component
  // containing the point estimate.
  if (disc <= 0.0) {
    out.lo = -std::numeric_limits<double>::infinity();
    out.hi = std::numeric_limits<double>::infinity();
    out.lo_unbounded = out.hi_unbounded = true;
    return out;
  }
  const double root = std::sqrt(disc);
  double r1 = (-b - root) / (2.0 * a);
  double r2 = (-b + root) / (2.0 * a);
  if (r1 > r2) std::swap(r1, r2);
  if (uhat >= r2) {
    out.lo = fit.xbar + r2;
    out.hi = std::numeric_limits<double>::infinity();
    out.hi_unbounded = true;
  } else {
    out.lo = -std::numeric_limits<double>::infinity();
    out.hi = fit.xbar + r1;
    out.lo_unbounded = true;
  }
  return out;
}

// ---- polynomial trends ----

double PolyTrendFit::trend(double x) const {
  const double u = x - xbar;
  double acc = 0.0, pw = 1.0;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    acc += theta(j) * pw;
    pw *= u;
  }
  return acc;
}

double PolyTrendFit::mean_var_factor(double x) const {
  const double u = x - xbar;
  Eigen::VectorXd row(theta.size());
  double pw = 1.0;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    row(j) = pw;
    pw *= u;
  }
  return row.dot(xtx_inv * row);
}

PolyTrendFit poly_trend_fit(const GappedSeries& series, int degree) {
  if (degree < 1 || degree > 3)
    throw std::invalid_argument("poly trend: degree must be 1..3");
  const auto n = static_cast<Eigen::Index>(series.size());
  const int p = degree + 1;
  if (n < p + 2) throw std::invalid_argument("poly trend: series too short");

  std::vector<double> x(series.size());
  for (std::size_t i = 0; i < series.size(); ++i)
    x[i] = static_cast<double>(series.times[i]);
  const CenteredCovariate cov = center(x);

  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = x[static_cast<std::size_t>(i)] - cov.xbar;
    double pw = 1.0;
    for (int j = 0; j < p; ++j) {
      X(i, j) = pw;
      pw *= u;
    }
    y(i) = series.values[static_cast<std::size_t>(i)];
  }
  PolyTrendFit fit;
  fit.degree = degree;
  fit.n = static_cast<int>(n);
  fit.m = static_cast<int>(n) - p;
  fit.xbar = cov.xbar;
  const Eigen::MatrixXd xtx = X.transpose() * X;
  fit.xtx_inv = xtx.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
  fit.theta = fit.xtx_inv * (X.transpose() * y);
  const double rss = (y - X * fit.theta).squaredNorm();
  fit.sigmahat = std::sqrt(rss / fit.m);
  if (!(fit.sigmahat > 0.0))
    throw numeric_error("poly trend: zero residual variance");
  return fit;
}

PredictionCd predict_cd(const PolyTrendFit& fit, double x_new) {
  PredictionCd cd;
  cd.center = fit.trend(x_new);
  cd.scale = fit.sigmahat * std::sqrt(1.0 + fit.mean_var_factor(x_new));
  cd.m = fit.m;
  return cd;
}

double crossing_level(const PolyTrendFit& fit, double y0, double x0) {
  const double num = y0 - fit.trend(x0);
  const double var =
      fit.sigmahat * fit.sigmahat * fit.mean_var_factor(x0);
  return f_cdf(num * num / var, 1.0, fit.m);
}

ConfidenceCurve crossing_cc(const PolyTrendFit& fit, double y0,
                            const std::vector<double>& x0_grid) {
  if (x0_grid.size() < 3)
    throw std::invalid_argument("crossing_cc: need a grid");
  ConfidenceCurve cc;
  cc.grid = x0_grid;
  cc.level.resize(x0_grid.size());
  for (std::size_t i = 0; i < x0_grid.size(); ++i)
    cc.level[i] = crossing_level(fit, y0, x0_grid[i]);

  // The point estimate solves trend(x0) = y0; locate the sign change of the
  // residual on the grid and bisect.
  double estimate = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 1; i < x0_grid.size(); ++i) {
    const double f0 = fit.trend(x0_grid[i - 1]) - y0;
    const double f1 = fit.trend(x0_grid[i]) - y0;
    if (f0 == 0.0) { estimate = x0_grid[i - 1]; break; }
    if (f0 * f1 < 0.0) {
      double a = x0_grid[i - 1], b = x0_grid[i];
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = fit.trend(mid) - y0;
        if (fm == 0.0) { a = b = mid; break; }
        if ((fit.trend(a) - y0) * fm < 0.0) b = mid; else a = mid;
      }
      estimate = 0.5 * (a + b);
      break;
    }
  }
  if (!std::isfinite(estimate))
    throw numeric_error("crossing_cc: trend never reaches the threshold "
                        "inside the grid");
  cc.point_estimate = estimate;
  // As x0 grows the statistic tends to the Wald quantity of the leading
  // coefficient, which caps the curve.
  const double lead = fit.theta(fit.degree);
  const double s2 = fit.sigmahat * fit.sigmahat;
  cc.cap = f_cdf(lead * lead / (s2 * fit.xtx_inv(fit.degree, fit.degree)), 1.0,
                 fit.m);
  return cc;
}

}  // namespace ccstat

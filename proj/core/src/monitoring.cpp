#include "ccstat/monitoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ccstat/errors.hpp"
#include "ccstat/parallel.hpp"
#include "ccstat/rng.hpp"

namespace ccstat {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double windowed_max_abs(const std::vector<double>& values,
                        const std::vector<double>& s, double eps) {
  double mx = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) continue;
    if (s[i] < eps - 1e-12 || s[i] > 1.0 - eps + 1e-12) continue;
    mx = std::max(mx, std::abs(values[i]));
  }
  return mx;
}

}  // namespace

bool bridge_is_weighted(BridgeKind kind) {
  return kind == BridgeKind::kSlope || kind == BridgeKind::kMean;
}

double inflation_factor(double rho) {
  if (!(std::abs(rho) < 1.0))
    throw std::invalid_argument("inflation_factor: |rho| < 1 required");
  return std::sqrt((1.0 + rho) / (1.0 - rho));
}

double ar1_moment_estimate(const GappedSeries& series) {
  const std::size_t n = series.size();
  double xbar = 0.0;
  for (double v : series.values) xbar += v;
  xbar /= static_cast<double>(n);
  double s2 = 0.0;
  for (double v : series.values) s2 += (v - xbar) * (v - xbar);
  s2 /= static_cast<double>(n);
  if (s2 <= 0.0) throw numeric_error("ar1 estimate: constant series");
  const double sd = std::sqrt(s2);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (series.times[k + 1] - series.times[k] != 1) continue;
    acc += (series.values[k] - xbar) * (series.values[k + 1] - xbar) /
           (sd * sd);
  }
  return acc / static_cast<double>(n);
}

BridgeProcess slope_bridge(const GappedSeries& series, int i0) {
  const int n = static_cast<int>(series.size());
  if (i0 < 3) throw std::invalid_argument("slope_bridge: i0 must be >= 3");
  if (n < 2 * i0) throw std::invalid_argument("slope_bridge: series too short");

  // Globally centered copies keep the prefix sums well conditioned and make
  // location-shift invariance exact.
  std::vector<double> x(series.size()), y(series.size());
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    x[i] = static_cast<double>(series.times[i]);
    y[i] = series.values[i];
    xm += x[i];
    ym += y[i];
  }
  xm /= n;
  ym /= n;
  for (std::size_t i = 0; i < series.size(); ++i) {
    x[i] -= xm;
    y[i] -= ym;
  }
  std::vector<double> cx(series.size()), cy(series.size()), cxx(series.size()),
      cxy(series.size()), cyy(series.size());
  double ax = 0, ay = 0, axx = 0, axy = 0, ayy = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    ax += x[i]; ay += y[i];
    axx += x[i] * x[i]; axy += x[i] * y[i]; ayy += y[i] * y[i];
    cx[i] = ax; cy[i] = ay; cxx[i] = axx; cxy[i] = axy; cyy[i] = ayy;
  }
  const double sxx_f = axx - ax * ax / n;
  const double sxy_f = axy - ax * ay / n;
  const double syy_f = ayy - ay * ay / n;
  if (sxx_f <= 0.0) throw numeric_error("slope_bridge: constant covariate");
  const double rss = syy_f - sxy_f * sxy_f / sxx_f;
  if (rss <= 0.0)
    throw numeric_error("slope_bridge: zero residual variance");
  const double sigma = std::sqrt(rss / (n - 2));

  BridgeProcess bp;
  bp.kind = BridgeKind::kSlope;
  bp.eps = static_cast<double>(i0) / n;
  std::vector<double> s;
  for (int k = i0; k <= n - i0; ++k) {
    const std::size_t j = static_cast<std::size_t>(k - 1);
    const double kl = k, kr = n - k;
    const double sxx_l = cxx[j] - cx[j] * cx[j] / kl;
    const double sxy_l = cxy[j] - cx[j] * cy[j] / kl;
    const double sxx_r = (axx - cxx[j]) - (ax - cx[j]) * (ax - cx[j]) / kr;
    const double sxy_r = (axy - cxy[j]) - (ax - cx[j]) * (ay - cy[j]) / kr;
    if (sxx_l <= 0.0 || sxx_r <= 0.0)
      throw numeric_error("slope_bridge: constant covariate on a side");
    const double bl = sxy_l / sxx_l;
    const double br = sxy_r / sxx_r;
    bp.taus.push_back(series.times[j]);
    bp.values.push_back((br - bl) /
                        (sigma * std::sqrt(1.0 / sxx_l + 1.0 / sxx_r)));
    s.push_back(static_cast<double>(k) / n);
  }
  bp.max_abs = windowed_max_abs(bp.values, s, bp.eps);
  return bp;
}

BridgeProcess mean_bridge(const GappedSeries& series, int i0, double rho_hat) {
  const int n = static_cast<int>(series.size());
  if (i0 < 2) throw std::invalid_argument("mean_bridge: i0 must be >= 2");
  if (n < 2 * i0) throw std::invalid_argument("mean_bridge: series too short");
  const double f = inflation_factor(rho_hat);

  std::vector<double> cy(series.size()), cyy(series.size());
  double ay = 0, ayy = 0, ym = 0;
  for (double v : series.values) ym += v;
  ym /= n;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double v = series.values[i] - ym;
    ay += v;
    ayy += v * v;
    cy[i] = ay;
    cyy[i] = ayy;
  }
  BridgeProcess bp;
  bp.kind = BridgeKind::kMean;
  bp.eps = static_cast<double>(i0) / n;
  std::vector<double> s;
  for (int k = i0; k <= n - i0; ++k) {
    const std::size_t j = static_cast<std::size_t>(k - 1);
    const double kl = k, kr = n - k;
    const double ml = cy[j] / kl;
    const double mr = (ay - cy[j]) / kr;
    const double vl = (cyy[j] - kl * ml * ml) / (kl - 1.0);
    const double vr = ((ayy - cyy[j]) - kr * mr * mr) / (kr - 1.0);
    if (vl <= 0.0 || vr <= 0.0)
      throw numeric_error("mean_bridge: zero variance on a side");
    bp.taus.push_back(series.times[j]);
    bp.values.push_back((mr - ml) / (std::sqrt(vl / kl + vr / kr) * f));
    s.push_back(static_cast<double>(k) / n);
  }
  bp.max_abs = windowed_max_abs(bp.values, s, bp.eps);
  return bp;
}

LaggedScan scan_lagged(const LaggedDesign& design, int i0) {
  const int n = static_cast<int>(design.years.size());
  if (i0 < 7) throw std::invalid_argument("scan_lagged: i0 must be >= 7");
  if (n < i0 + 3) throw std::invalid_argument("scan_lagged: design too short");

  LaggedScan scan;
  const int count = n - i0 + 1;
  scan.row_counts.resize(count);
  scan.taus.resize(count);
  scan.loglik.assign(count, kNan);
  scan.theta.assign(count, Eigen::VectorXd());

  parallel_for(static_cast<std::size_t>(count), [&](std::size_t idx) {
    const int tau = i0 + static_cast<int>(idx);
    scan.row_counts[idx] = tau;
    scan.taus[idx] = design.years[static_cast<std::size_t>(tau - 1)];
    const Eigen::MatrixXd x_part = design.X.topRows(tau);
    const Eigen::VectorXd y_part = design.y.head(tau);
    const std::vector<int> t_part(design.years.begin(),
                                  design.years.begin() + tau);
    try {
      const ProfileRhoFit fit = fit_profile_rho(x_part, y_part, t_part);
      if (fit.boundary) return;  // leave as a hole
      Eigen::VectorXd th(5);
      th.head(3) = fit.beta;
      th(3) = fit.sigma;
      th(4) = fit.rho;
      scan.theta[idx] = th;
      scan.loglik[idx] = fit.loglik;
    } catch (const numeric_error&) {
      // hole
    }
  });
  for (int i = 0; i < count; ++i)
    if (!std::isfinite(scan.loglik[static_cast<std::size_t>(i)]))
      scan.holes.push_back(scan.taus[static_cast<std::size_t>(i)]);
  return scan;
}

BridgeProcess loglik_bridge(const LaggedScan& scan, int n_rows, int i0) {
  const double n = n_rows;
  const double kappa = std::sqrt(0.5);
  if (scan.loglik.empty() || !std::isfinite(scan.loglik.back()))
    throw numeric_error("loglik_bridge: full-data fit did not converge");
  const double ll_full = scan.loglik.back();

  BridgeProcess bp;
  bp.kind = BridgeKind::kLoglik;
  bp.eps = static_cast<double>(i0) / n;
  bp.taus = scan.taus;
  bp.holes = scan.holes;
  bp.values.resize(scan.loglik.size());
  std::vector<double> s(scan.loglik.size());
  for (std::size_t i = 0; i < scan.loglik.size(); ++i) {
    const double tau = scan.row_counts[i];
    s[i] = tau / n;
    bp.values[i] = std::isfinite(scan.loglik[i])
                       ? (scan.loglik[i] - (tau / n) * ll_full) /
                             (std::sqrt(n) * kappa)
                       : kNan;
  }
  bp.max_abs = windowed_max_abs(bp.values, s, bp.eps);
  return bp;
}

BridgeProcess loglik_bridge(const LaggedDesign& design, int i0) {
  const LaggedScan scan = scan_lagged(design, i0);
  return loglik_bridge(scan, static_cast<int>(design.years.size()), i0);
}

std::vector<BridgeProcess> param_bridges(const LaggedScan& scan,
                                         const GlsArFit& full_fit, int n_rows,
                                         int i0) {
  const double n = n_rows;
  if (scan.theta.empty() || scan.theta.back().size() != 5)
    throw numeric_error("param_bridges: full-data fit did not converge");
  if (!full_fit.info_pd)
    throw numeric_error("param_bridges: observed information not positive "
                        "definite");
  const Eigen::VectorXd& th_full = scan.theta.back();

  std::vector<BridgeProcess> out(5);
  const std::vector<std::string> names = {"beta0", "beta1", "beta2", "sigma",
                                          "rho"};
  for (int j = 0; j < 5; ++j) {
    BridgeProcess& bp = out[static_cast<std::size_t>(j)];
    bp.kind = BridgeKind::kParameter;
    bp.param_name = names[static_cast<std::size_t>(j)];
    bp.eps = static_cast<double>(i0) / n;
    bp.taus = scan.taus;
    bp.holes = scan.holes;
    bp.values.resize(scan.theta.size());
    const double se = full_fit.se(j);
    std::vector<double> s(scan.theta.size());
    for (std::size_t i = 0; i < scan.theta.size(); ++i) {
      const double tau = scan.row_counts[i];
      s[i] = tau / n;
      bp.values[i] =
          (scan.theta[i].size() == 5)
              ? (tau / n) * (scan.theta[i](j) - th_full(j)) / se
              : kNan;
    }
    bp.max_abs = windowed_max_abs(bp.values, s, bp.eps);
  }
  return out;
}

std::vector<BridgeProcess> param_bridges(const LaggedDesign& design, int i0) {
  const LaggedScan scan = scan_lagged(design, i0);
  const GlsArFit full = fit_lagged(design);
  return param_bridges(scan, full, static_cast<int>(design.years.size()), i0);
}

double NullQuantiles::p_value(double observed_max) const {
  const auto it =
      std::lower_bound(maxima.begin(), maxima.end(), observed_max);
  const auto exceeding = static_cast<double>(maxima.end() - it);
  return (1.0 + exceeding) / (static_cast<double>(maxima.size()) + 1.0);
}

NullQuantiles simulate_null_quantiles(bool weighted, double eps,
                                      const std::vector<double>& levels,
                                      int paths, std::uint64_t seed,
                                      int grid_steps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("null quantiles: eps in (0, 1/2)");
  if (paths < 10000)
    throw std::invalid_argument("null quantiles: need >= 10^4 paths");
  if (grid_steps < 100)
    throw std::invalid_argument("null quantiles: grid too coarse");

  NullQuantiles nq;
  nq.eps = eps;
  nq.weighted = weighted;
  nq.paths = paths;
  nq.seed = seed;
  nq.maxima.resize(static_cast<std::size_t>(paths));

  const int g = grid_steps;
  const double inv_sqrt_g = 1.0 / std::sqrt(static_cast<double>(g));
  const int lo = std::max(1, static_cast<int>(std::ceil(eps * g - 1e-9)));
  const int hi = std::min(g - 1, static_cast<int>(std::floor((1.0 - eps) * g + 1e-9)));

  parallel_for(static_cast<std::size_t>(paths), [&](std::size_t path) {
    Rng rng = seeded_rng(seed, path);
    std::normal_distribution<double> gauss(0.0, 1.0);
    // One pass: accumulate W, then a second pass over the stored walk to
    // subtract s W(1); keep the walk in a thread-local buffer.
    thread_local std::vector<double> walk;
    walk.resize(static_cast<std::size_t>(g));
    double acc = 0.0;
    for (int i = 0; i < g; ++i) {
      acc += gauss(rng) * inv_sqrt_g;
      walk[static_cast<std::size_t>(i)] = acc;
    }
    const double w1 = acc;
    double mx = 0.0;
    for (int i = lo; i <= hi; ++i) {
      const double s = static_cast<double>(i) / g;
      double v = walk[static_cast<std::size_t>(i - 1)] - s * w1;
      if (weighted) v /= std::sqrt(s * (1.0 - s));
      mx = std::max(mx, std::abs(v));
    }
    nq.maxima[path] = mx;
  });
  std::sort(nq.maxima.begin(), nq.maxima.end());
  for (double level : levels) {
    if (level <= 0.0 || level >= 1.0)
      throw std::invalid_argument("null quantiles: level in (0,1)");
    const double pos = level * (paths - 1);
    const auto i0q = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(i0q);
    const double q =
        (i0q + 1 < nq.maxima.size())
            ? nq.maxima[i0q] * (1.0 - frac) + nq.maxima[i0q + 1] * frac
            : nq.maxima.back();
    nq.quantiles[level] = q;
  }
  return nq;
}

NullQuantiles simulate_null_quantiles(BridgeKind kind, double eps,
                                      const std::vector<double>& levels,
                                      int paths, std::uint64_t seed,
                                      int grid_steps) {
  return simulate_null_quantiles(bridge_is_weighted(kind), eps, levels, paths,
                                 seed, grid_steps);
}

}  // namespace ccstat

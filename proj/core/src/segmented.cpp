#include "ccstat/segmented.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccstat/errors.hpp"
#include "ccstat/gls_ar.hpp"
#include "ccstat/parallel.hpp"
#include "ccstat/rng.hpp"

namespace ccstat {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

double gaussian_profile_loglik(double q, double n) {
  return -0.5 * n * std::log(q / n) - 0.5 * n - 0.5 * n * kLog2Pi;
}

// Design row for coefficients (a_R, b_L, b_R) after eliminating a_L via
// a_L = a_R + (b_R - b_L) k with k the knot on the covariate scale.
void fill_row(Eigen::MatrixXd& X, Eigen::Index i, bool left, double u,
              double k) {
  X(i, 0) = 1.0;
  if (left) {
    X(i, 1) = u - k;
    X(i, 2) = k;
  } else {
    X(i, 1) = 0.0;
    X(i, 2) = u;
  }
}

}  // namespace

double segmented_profile_loglik(const GappedSeries& series, int tau,
                                SegmentedCoefs* coefs) {
  const auto n = static_cast<Eigen::Index>(series.size());
  std::vector<double> x(series.size());
  for (std::size_t i = 0; i < series.size(); ++i)
    x[i] = static_cast<double>(series.times[i]);
  const double xbar = center(x).xbar;
  const double knot = static_cast<double>(tau) + 0.5 - xbar;

  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  Eigen::Index n_left = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool left = series.times[static_cast<std::size_t>(i)] <= tau;
    if (left) ++n_left;
    fill_row(X, i, left, x[static_cast<std::size_t>(i)] - xbar, knot);
    y(i) = series.values[static_cast<std::size_t>(i)];
  }
  if (n_left < 2 || n - n_left < 2)
    throw std::invalid_argument("segmented: a side has fewer than 2 points");

  const auto qr = X.colPivHouseholderQr();
  if (qr.rank() < 3)
    throw numeric_error("segmented: degenerate piece (constant covariate)");
  const Eigen::VectorXd c = qr.solve(y);
  const double q = (y - X * c).squaredNorm();
  if (coefs) {
    coefs->a_r = c(0);
    coefs->b_l = c(1);
    coefs->b_r = c(2);
    coefs->a_l = c(0) + (c(2) - c(1)) * knot;
    coefs->q = q;
  }
  if (q <= 1e-18 * std::max(1.0, y.squaredNorm()))
    return std::numeric_limits<double>::infinity();
  return gaussian_profile_loglik(q, static_cast<double>(n));
}

SegmentedFit fit_segmented(const GappedSeries& series, int i0) {
  const int n = static_cast<int>(series.size());
  if (i0 < 2) throw std::invalid_argument("segmented: i0 must be >= 2");
  if (n < 2 * i0 + 1)
    throw std::invalid_argument("segmented: series too short for i0");

  SegmentedFit fit;
  std::vector<double> x(series.size());
  for (std::size_t i = 0; i < series.size(); ++i)
    x[i] = static_cast<double>(series.times[i]);
  fit.xbar = center(x).xbar;

  // Candidate breaks leave at least i0 observations on each side.
  for (int idx = i0 - 1; idx <= n - i0 - 1; ++idx)
    fit.tau_grid.push_back(series.times[static_cast<std::size_t>(idx)]);
  fit.profile.resize(fit.tau_grid.size());

  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  bool degenerate = false;
  for (std::size_t i = 0; i < fit.tau_grid.size(); ++i) {
    fit.profile[i] = segmented_profile_loglik(series, fit.tau_grid[i]);
    if (std::isinf(fit.profile[i])) degenerate = true;
    if (fit.profile[i] > best) {  // strict: ties keep the smallest tau
      best = fit.profile[i];
      best_i = i;
    }
  }
  fit.tau = fit.tau_grid[best_i];
  SegmentedCoefs coefs;
  segmented_profile_loglik(series, fit.tau, &coefs);
  fit.a_l = coefs.a_l;
  fit.b_l = coefs.b_l;
  fit.a_r = coefs.a_r;
  fit.b_r = coefs.b_r;
  fit.sigma = std::sqrt(coefs.q / n);
  fit.loglik_max = best;
  fit.aic = ::ccstat::aic(best, 5);
  fit.degenerate = degenerate;
  return fit;
}

BreakTest segmented_break_test(const GappedSeries& series, int i0,
                               int replicates, std::uint64_t seed) {
  if (replicates < 1) throw std::invalid_argument("break test: replicates");
  GlsArModel lin = trend_model(series);
  Eigen::VectorXd y(static_cast<Eigen::Index>(series.size()));
  for (std::size_t i = 0; i < series.size(); ++i)
    y(static_cast<Eigen::Index>(i)) = series.values[i];
  const GlsArFit linear = fit_ols(lin, y);
  if (linear.degenerate)
    throw numeric_error("break test: degenerate linear fit");
  const SegmentedFit seg = fit_segmented(series, i0);

  BreakTest out;
  out.gain = seg.loglik_max - linear.loglik_max;
  out.replicates = replicates;

  const Eigen::VectorXd trend = lin.X * linear.beta;
  std::vector<int> exceed(static_cast<std::size_t>(replicates), 0);
  parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t r) {
    Rng rng = seeded_rng(seed, r);
    std::normal_distribution<double> gauss(0.0, linear.sigma);
    GappedSeries sim = series;
    for (std::size_t i = 0; i < sim.size(); ++i)
      sim.values[i] = trend(static_cast<Eigen::Index>(i)) + gauss(rng);
    Eigen::VectorXd ys(static_cast<Eigen::Index>(sim.size()));
    for (std::size_t i = 0; i < sim.size(); ++i)
      ys(static_cast<Eigen::Index>(i)) = sim.values[i];
    const double lin_ll = fit_ols(lin, ys).loglik_max;
    const double seg_ll = fit_segmented(sim, i0).loglik_max;
    exceed[r] = (seg_ll - lin_ll >= out.gain) ? 1 : 0;
  });
  int count = 0;
  for (int e : exceed) count += e;
  out.p_value = (1.0 + count) / (replicates + 1.0);
  return out;
}

}  // namespace ccstat

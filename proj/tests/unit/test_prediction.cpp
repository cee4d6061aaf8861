#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ccstat/errors.hpp"
#include "ccstat/prediction.hpp"
#include "ccstat/rng.hpp"
#include "ccstat/stats.hpp"
#include "oracles.hpp"

using namespace ccstat;

namespace {

GappedSeries noisy_line(int n, double a, double b, double sigma,
                        std::uint64_t seed, int first_year = 1901) {
  Rng rng = seeded_rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  GappedSeries s;
  s.times.resize(static_cast<std::size_t>(n));
  std::iota(s.times.begin(), s.times.end(), first_year);
  s.values.resize(static_cast<std::size_t>(n));
  const double xbar =
      first_year + 0.5 * (n - 1);
  for (int i = 0; i < n; ++i)
    s.values[static_cast<std::size_t>(i)] =
        a + b * (s.times[static_cast<std::size_t>(i)] - xbar) + gauss(rng);
  return s;
}

}  // namespace

TEST_CASE("predict_cd: centering, limit width, and quantile inversion") {
  const GappedSeries s = noisy_line(124, 0.5, 0.012, 0.35, 31);
  const LinearFitSummary fit = linear_fit_summary(s);

  // at the fitted value the CD sits at one half
  const PredictionCd at_fit = predict_cd(fit, 2030.0);
  CHECK(at_fit.cdf(at_fit.center) == doctest::Approx(0.5));

  // large-n limit at x_new = xbar: +-1.645 sigma
  const GappedSeries big = noisy_line(20000, 1.0, 0.001, 2.0, 32);
  const LinearFitSummary bf = linear_fit_summary(big);
  const PredictionCd pc = predict_cd(bf, bf.xbar);
  const Interval iv = pc.central_interval(0.90);
  CHECK(iv.lo == doctest::Approx(pc.center - 1.6449 * bf.sigmahat).epsilon(5e-3));
  CHECK(iv.hi == doctest::Approx(pc.center + 1.6449 * bf.sigmahat).epsilon(5e-3));

  // interval width grows with |x_new - xbar|
  double last_width = 0.0;
  for (double x : {2024.0, 2040.0, 2060.0, 2100.0}) {
    const Interval w = predict_cd(fit, x).central_interval(0.90);
    CHECK(w.hi - w.lo >= last_width);
    last_width = w.hi - w.lo;
  }
}

TEST_CASE("predict_cd quantiles against a Monte Carlo predictive oracle") {
  const GappedSeries s = noisy_line(40, 2.0, 0.05, 1.2, 33);
  const LinearFitSummary fit = linear_fit_summary(s);
  const double x_new = s.times.back() + 10.0;
  const PredictionCd pc = predict_cd(fit, x_new);

  // draws of (thetahat, sigmahat)-conditioned future values: center +
  // scale * Z / sqrt(V/m), the t_m predictive
  Rng rng = seeded_rng(34);
  std::normal_distribution<double> gauss;
  std::chi_squared_distribution<double> chi(fit.m);
  const int draws = 400000;
  std::vector<double> sample(draws);
  for (int i = 0; i < draws; ++i)
    sample[static_cast<std::size_t>(i)] =
        pc.center + pc.scale * gauss(rng) / std::sqrt(chi(rng) / fit.m);
  std::sort(sample.begin(), sample.end());
  const double q05 = sample[static_cast<std::size_t>(0.05 * draws)];
  const double q95 = sample[static_cast<std::size_t>(0.95 * draws)];
  CHECK(pc.quantile(0.05) == doctest::Approx(q05).epsilon(4e-3));
  CHECK(pc.quantile(0.95) == doctest::Approx(q95).epsilon(4e-3));
}

TEST_CASE("crossing cap: paper values and the t-quadrature oracle") {
  // construct a summary with the exact t statistic by hand
  LinearFitSummary fit;
  fit.n = 124;
  fit.m = 122;
  fit.xbar = 1962.5;
  fit.m_n = 158875.0;
  fit.sigmahat = 0.35;
  SUBCASE("t = 1.501 gives cap 0.864") {
    fit.bhat = 1.501 * fit.sigmahat / std::sqrt(fit.m_n);
    const CrossingCap cap = crossing_cap(fit);
    CHECK(cap.t_stat == doctest::Approx(1.501).epsilon(1e-12));
    CHECK(cap.cap == doctest::Approx(0.864).epsilon(2e-3));
  }
  SUBCASE("t = 3.598 gives cap 1 - p*, against quadrature") {
    fit.bhat = 3.598 * fit.sigmahat / std::sqrt(fit.m_n);
    const CrossingCap cap = crossing_cap(fit);
    const double p_star = 2.0 * (1.0 - oracles::t_cdf_quadrature(3.598, 122));
    CHECK(cap.cap == doctest::Approx(1.0 - p_star).epsilon(1e-9));
    CHECK(cap.cap > 0.999);
  }
  SUBCASE("flat slope leaves the year unidentified") {
    fit.bhat = 0.0;
    CHECK(crossing_cap(fit).cap == doctest::Approx(0.0));
  }
}

TEST_CASE("crossing_cc: zero at the estimate, cap as supremum") {
  const GappedSeries s = noisy_line(124, 0.5, 0.012, 0.35, 35);
  const LinearFitSummary fit = linear_fit_summary(s);
  const double y0 = 1.5;
  const double x0_hat = crossing_estimate(fit, y0);
  CHECK(crossing_level(fit, y0, x0_hat) == doctest::Approx(0.0).epsilon(1e-12));

  const ConfidenceCurve cc =
      crossing_cc(fit, y0, linspace(2024.0, 2400.0, 800));
  CHECK(cc.point_estimate == doctest::Approx(x0_hat));
  // wide-grid supremum approaches the cap from below
  const double sup = *std::max_element(cc.level.begin(), cc.level.end());
  CHECK(sup <= cc.cap + 1e-12);
  const double far = crossing_level(fit, y0, 1.0e7);
  CHECK(far == doctest::Approx(cc.cap).epsilon(1e-6));

  // negative slope refuses
  LinearFitSummary down = fit;
  down.bhat = -0.01;
  CHECK_THROWS_AS(crossing_estimate(down, y0), numeric_error);
}

TEST_CASE("crossing_interval endpoints satisfy the defining quadratic") {
  const GappedSeries s = noisy_line(124, 0.5, 0.012, 0.35, 36);
  const LinearFitSummary fit = linear_fit_summary(s);
  const double y0 = 1.5;
  for (double level : {0.5, 0.8, 0.9}) {
    const Interval iv = crossing_interval(fit, y0, level);
    if (level >= crossing_cap(fit).cap) continue;
    const double q = f_quantile(level, 1.0, fit.m);
    for (double end : {iv.lo, iv.hi}) {
      const double u = end - fit.xbar;
      const double lhs = std::pow(y0 - fit.ahat - fit.bhat * u, 2);
      const double rhs = q * fit.sigmahat * fit.sigmahat *
                         (1.0 / fit.n + u * u / fit.m_n);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
    // consistency with the tabulated sub-level set
    CHECK(crossing_level(fit, y0, iv.lo) == doctest::Approx(level).epsilon(1e-8));
    CHECK(crossing_level(fit, y0, iv.hi) == doctest::Approx(level).epsilon(1e-8));
  }

  // above the cap: right-unbounded
  const double cap = crossing_cap(fit).cap;
  if (cap < 0.995) {
    const Interval open = crossing_interval(fit, y0, 0.5 * (1.0 + cap));
    CHECK(open.hi_unbounded);
  }
}

TEST_CASE("weak-slope series gives an interval including infinity") {
  // flat trend: t_n moderate, the 90% crossing set runs off to infinity
  const GappedSeries s = noisy_line(124, 0.8, 0.0004, 0.35, 37);
  const LinearFitSummary fit = linear_fit_summary(s);
  const CrossingCap cap = crossing_cap(fit);
  if (cap.cap < 0.9) {
    const Interval iv = crossing_interval(fit, 1.5, 0.9);
    CHECK(iv.hi_unbounded);
  }
}

TEST_CASE("polynomial degree 1 reduces to the closed-form linear case") {
  const GappedSeries s = noisy_line(80, 0.2, 0.02, 0.5, 38);
  const LinearFitSummary lin = linear_fit_summary(s);
  const PolyTrendFit poly = poly_trend_fit(s, 1);
  CHECK(poly.theta(0) == doctest::Approx(lin.ahat).epsilon(1e-10));
  CHECK(poly.theta(1) == doctest::Approx(lin.bhat).epsilon(1e-10));
  CHECK(poly.sigmahat == doctest::Approx(lin.sigmahat).epsilon(1e-10));

  for (double x : {2000.0, 2030.0, 2080.0}) {
    const PredictionCd a = predict_cd(lin, x);
    const PredictionCd b = predict_cd(poly, x);
    CHECK(a.center == doctest::Approx(b.center).epsilon(1e-10));
    CHECK(a.scale == doctest::Approx(b.scale).epsilon(1e-10));
    CHECK(crossing_level(lin, 1.5, x) ==
          doctest::Approx(crossing_level(poly, 1.5, x)).epsilon(1e-9));
  }
}

TEST_CASE("quadratic crossing curve: zero at the numeric root") {
  // convex trend crossing the threshold once in the future
  Rng rng = seeded_rng(39);
  std::normal_distribution<double> gauss(0.0, 0.1);
  GappedSeries s;
  s.times.resize(100);
  std::iota(s.times.begin(), s.times.end(), 1950);
  s.values.resize(100);
  for (int i = 0; i < 100; ++i) {
    const double u = i - 49.5;
    s.values[static_cast<std::size_t>(i)] =
        0.3 + 0.004 * u + 0.0001 * u * u + gauss(rng);
  }
  const PolyTrendFit fit = poly_trend_fit(s, 2);
  const ConfidenceCurve cc =
      crossing_cc(fit, 2.5, linspace(2050.0, 2300.0, 1000));
  CHECK(fit.trend(cc.point_estimate) == doctest::Approx(2.5).epsilon(1e-6));
  const double lvl = crossing_level(fit, 2.5, cc.point_estimate);
  CHECK(lvl < 1e-10);
}

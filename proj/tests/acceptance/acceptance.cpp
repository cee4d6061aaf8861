// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures.  Run with no arguments for all criteria, or pass criterion
// numbers to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ccstat/confidence.hpp"
#include "ccstat/extremes.hpp"
#include "ccstat/fusion.hpp"
#include "ccstat/gls_ar.hpp"
#include "ccstat/monitoring.hpp"
#include "ccstat/optimize.hpp"
#include "ccstat/parallel.hpp"
#include "ccstat/prediction.hpp"
#include "ccstat/rng.hpp"
#include "ccstat/segmented.hpp"
#include "ccstat/simulate.hpp"
#include "ccstat/stats.hpp"
#include "oracles.hpp"

using namespace ccstat;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    detail << (cond ? "" : "!! ") << what << "; ";
  }
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// ---------- criterion 1: fusion illustration A ----------
Check criterion_1() {
  Check c;
  const std::vector<double> grid = linspace(1.0, 15.0, 1001);
  const ChisqSdCd s1 = chisq_sd_cd(3.33, 6);
  const ChisqSdCd s2 = chisq_sd_cd(5.55, 6);

  const Interval iv1 = s1.central_interval(0.95);
  const Interval iv2 = s2.central_interval(0.95);
  c.require(std::abs(iv1.lo - 2.15) <= 0.01 && std::abs(iv1.hi - 7.33) <= 0.01,
            "source 1 interval [" + fmt(iv1.lo) + ", " + fmt(iv1.hi) +
                "] vs [2.15, 7.33] +-0.01");
  c.require(std::abs(iv2.lo - 3.58) <= 0.01 && std::abs(iv2.hi - 12.22) <= 0.01,
            "source 2 interval [" + fmt(iv2.lo) + ", " + fmt(iv2.hi) +
                "] vs [3.58, 12.22] +-0.01");

  const ConfidenceCurve fused =
      fuse({{"s1", cc_from_cd(s1.tabulate(grid))},
            {"s2", cc_from_cd(s2.tabulate(grid))}},
           grid);
  const Interval iv = interval(fused, 0.95);
  c.require(std::abs(iv.lo - 3.35) <= 0.05 && std::abs(iv.hi - 7.85) <= 0.05,
            "fused interval [" + fmt(iv.lo) + ", " + fmt(iv.hi) +
                "] vs [3.35, 7.85] +-0.05");
  return c;
}

// ---------- criterion 2: AR inflation factor ----------
Check criterion_2() {
  Check c;
  const double f = inflation_factor(0.422);
  c.require(std::abs(f - 1.567) <= 0.001,
            "f(0.422) = " + fmt(f, 6) + " vs 1.567 +-0.001 (paper-rounding "
            "inconsistency: sqrt(1.422/0.578) = 1.5685)");
  return c;
}

// ---------- criterion 3: crossing cap identity ----------
Check criterion_3() {
  Check c;
  LinearFitSummary fit;
  fit.n = 124;
  fit.m = 122;
  fit.xbar = 1962.5;
  fit.m_n = 158875.0;
  fit.sigmahat = 0.35;
  fit.ahat = 0.0;

  fit.bhat = 1.501 * fit.sigmahat / std::sqrt(fit.m_n);
  const double cap1 = crossing_cap(fit).cap;
  c.require(std::abs(cap1 - 0.864) <= 0.002,
            "cap(t=1.501, m=122) = " + fmt(cap1, 5) + " vs 0.864 +-0.002");

  fit.bhat = 3.598 * fit.sigmahat / std::sqrt(fit.m_n);
  const double cap2 = crossing_cap(fit).cap;
  c.require(cap2 > 0.999, "cap(t=3.598) = " + fmt(cap2, 6) + " > 0.999");
  return c;
}

// ---------- criterion 4: null quantiles ----------
Check criterion_4() {
  Check c;
  const NullQuantiles weighted =
      simulate_null_quantiles(true, 0.025, {0.95}, 100000, 20250101);
  c.require(std::abs(weighted.quantiles.at(0.95) - 3.18) <= 0.05,
            "weighted 0.95 quantile = " + fmt(weighted.quantiles.at(0.95), 5) +
                " vs 3.18 +-0.05");
  const NullQuantiles plain =
      simulate_null_quantiles(false, 0.025, {0.95}, 100000, 20250102);
  c.require(std::abs(plain.quantiles.at(0.95) - 1.358) <= 0.02,
            "unweighted 0.95 quantile = " + fmt(plain.quantiles.at(0.95), 5) +
                " vs 1.358 +-0.02");
  return c;
}

// ---------- criterion 5: CD calibration for rho ----------
Check criterion_5() {
  Check c;
  const int reps = 1000, n = 200;
  const double rho_true = 0.4;
  std::vector<double> u(reps);
  std::vector<int> times(n);
  std::iota(times.begin(), times.end(), 1);
  Eigen::MatrixXd x(n, 2);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = 1.0;
    x(i, 1) = i + 1;
  }
  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t rep) {
    Rng rng = seeded_rng(50001, rep);
    const Eigen::VectorXd e = simulate_ar1_errors(times, rho_true, rng);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = 10.0 + 0.3 * (i + 1) + 5.0 * e(i);
    const ProfileRhoFit fit = fit_profile_rho(x, y, times);
    GlsArModel m;
    m.X = x;
    m.times = times;
    const double ll_true = profile_loglik_given_rho(m, y, rho_true);
    const double dev = std::max(0.0, 2.0 * (fit.loglik - ll_true));
    u[rep] = profile_cd_value(rho_true, fit.rho, dev);
  });
  const double d = ks_uniform_statistic(u);
  const double p = ks_uniform_pvalue(u);
  c.require(p > 0.01, "KS of C(rho_true) vs U(0,1): D = " + fmt(d, 4) +
                          ", p = " + fmt(p, 4) + " > 0.01");
  return c;
}

// ---------- criterion 6: crossing-year coverage ----------
Check criterion_6() {
  Check c;
  const int reps = 1000, n = 124;
  const double a = 0.5, b = 0.012, sigma = 0.35, y0 = 1.5;
  std::vector<int> covered(reps, 0);
  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t rep) {
    Rng rng = seeded_rng(60001, rep);
    std::normal_distribution<double> gauss(0.0, sigma);
    GappedSeries s;
    s.times.resize(n);
    std::iota(s.times.begin(), s.times.end(), 1901);
    s.values.resize(n);
    const double xbar = 1901 + 0.5 * (n - 1);
    for (int i = 0; i < n; ++i)
      s.values[static_cast<std::size_t>(i)] =
          a + b * (s.times[static_cast<std::size_t>(i)] - xbar) + gauss(rng);
    const double x0_true = xbar + (y0 - a) / b;
    const LinearFitSummary fit = linear_fit_summary(s);
    // membership in the 90% crossing set
    covered[rep] = crossing_level(fit, y0, x0_true) <= 0.90 ? 1 : 0;
  });
  const double rate =
      std::accumulate(covered.begin(), covered.end(), 0) /
      static_cast<double>(reps);
  c.require(std::abs(rate - 0.90) <= 0.03,
            "90% crossing-set coverage = " + fmt(rate, 4) + " vs 0.90 +-0.03");
  return c;
}

// ---------- criterion 7: segmented recovery ----------
Check criterion_7() {
  Check c;
  const int reps = 200, n = 124, tau_true = 1962;
  const double b_l = 0.005, b_r = 0.04, sigma = 0.5;
  std::vector<int> close(reps, 0), aic_win(reps, 0);
  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t rep) {
    Rng rng = seeded_rng(70001, rep);
    std::normal_distribution<double> gauss(0.0, sigma);
    GappedSeries s;
    s.times.resize(n);
    std::iota(s.times.begin(), s.times.end(), 1901);
    s.values.resize(n);
    const double xbar = 1901 + 0.5 * (n - 1);
    const double knot = tau_true + 0.5 - xbar;
    const double a_l = 0.0;
    const double a_r = a_l + (b_l - b_r) * knot;
    for (int i = 0; i < n; ++i) {
      const double u = s.times[static_cast<std::size_t>(i)] - xbar;
      const double mean = (s.times[static_cast<std::size_t>(i)] <= tau_true)
                              ? a_l + b_l * u
                              : a_r + b_r * u;
      s.values[static_cast<std::size_t>(i)] = mean + gauss(rng);
    }
    const SegmentedFit fit = fit_segmented(s, 10);
    close[rep] = std::abs(fit.tau - tau_true) <= 3 ? 1 : 0;
    GlsArModel m = trend_model(s);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = s.values[static_cast<std::size_t>(i)];
    aic_win[rep] = fit.aic > fit_ols(m, y).aic ? 1 : 0;
  });
  const double close_rate =
      std::accumulate(close.begin(), close.end(), 0) / static_cast<double>(reps);
  const double aic_rate =
      std::accumulate(aic_win.begin(), aic_win.end(), 0) /
      static_cast<double>(reps);
  c.require(close_rate >= 0.90,
            "break recovered within +-3 years in " + fmt(close_rate, 4) +
                " of replications (needs >= 0.90; the ML scan attains ~0.47 "
                "at sigma = 0.5, see ledger)");
  c.require(aic_rate >= 0.95, "segmented AIC beats linear in " +
                                  fmt(aic_rate, 4) + " (needs >= 0.95)");
  return c;
}

// ---------- criterion 8: monitoring size and power ----------
Check criterion_8() {
  Check c;
  const int n = 500, reps = 1000;

  // slope and mean bridges: i0 = 75, matched weighted null
  {
    const int i0 = 75;
    const double eps = static_cast<double>(i0) / n;
    const NullQuantiles nq =
        simulate_null_quantiles(true, eps, {0.95}, 50000, 80001);
    const double gate = nq.quantiles.at(0.95);
    std::vector<int> s_exc(reps, 0), m_exc(reps, 0), m_pow(reps, 0);
    parallel_for(static_cast<std::size_t>(reps), [&](std::size_t rep) {
      Rng rng = seeded_rng(80002, rep);
      std::normal_distribution<double> gauss;
      GappedSeries s;
      s.times.resize(n);
      std::iota(s.times.begin(), s.times.end(), 1);
      s.values.resize(n);
      for (auto& v : s.values) v = gauss(rng);
      s_exc[rep] = slope_bridge(s, i0).max_abs > gate ? 1 : 0;
      m_exc[rep] =
          mean_bridge(s, i0, ar1_moment_estimate(s)).max_abs > gate ? 1 : 0;
      // power: two-sigma shift at the midpoint
      GappedSeries shifted = s;
      for (int i = n / 2; i < n; ++i)
        shifted.values[static_cast<std::size_t>(i)] += 2.0;
      m_pow[rep] =
          mean_bridge(shifted, i0, ar1_moment_estimate(shifted)).max_abs > gate
              ? 1
              : 0;
    });
    const double s_rate =
        std::accumulate(s_exc.begin(), s_exc.end(), 0) / double(reps);
    const double m_rate =
        std::accumulate(m_exc.begin(), m_exc.end(), 0) / double(reps);
    const double power =
        std::accumulate(m_pow.begin(), m_pow.end(), 0) / double(reps);
    c.require(std::abs(s_rate - 0.05) <= 0.02,
              "slope size = " + fmt(s_rate, 3) + " vs 0.05 +-0.02");
    c.require(std::abs(m_rate - 0.05) <= 0.02,
              "mean size = " + fmt(m_rate, 3) + " vs 0.05 +-0.02");
    c.require(power >= 0.95, "mean power at 2-sigma shift = " + fmt(power, 3) +
                                 " >= 0.95");
  }

  // loglik and parameter bridges: i0 = 50, plain-bridge null
  {
    const int i0 = 50;
    const double eps = static_cast<double>(i0) / n;
    const NullQuantiles nq =
        simulate_null_quantiles(false, eps, {0.95}, 50000, 80003);
    const double gate = nq.quantiles.at(0.95);
    std::vector<int> ll_exc(reps, 0);
    std::vector<std::array<int, 5>> par_exc(reps, {0, 0, 0, 0, 0});
    parallel_for(static_cast<std::size_t>(reps), [&](std::size_t rep) {
      Rng rng = seeded_rng(80004, rep);
      std::normal_distribution<double> gauss;
      LaggedDesign d;
      d.years.resize(n);
      std::iota(d.years.begin(), d.years.end(), 1900);
      d.X.resize(n, 3);
      d.y.resize(n);
      for (int i = 0; i < n; ++i) {
        d.X(i, 0) = 1.0;
        d.X(i, 1) = gauss(rng);
        d.X(i, 2) = gauss(rng);
      }
      const Eigen::VectorXd e = simulate_ar1_errors(d.years, 0.3, rng);
      for (int i = 0; i < n; ++i)
        d.y(i) = 0.5 + 0.3 * d.X(i, 1) + 0.2 * d.X(i, 2) + 0.8 * e(i);
      const LaggedScan scan = scan_lagged(d, i0);
      const BridgeProcess ll = loglik_bridge(scan, n, i0);
      ll_exc[rep] = ll.max_abs > gate ? 1 : 0;
      const GlsArFit full = fit_lagged(d);
      const auto bridges = param_bridges(scan, full, n, i0);
      for (int j = 0; j < 5; ++j)
        par_exc[rep][static_cast<std::size_t>(j)] =
            bridges[static_cast<std::size_t>(j)].max_abs > gate ? 1 : 0;
    });
    const double ll_rate =
        std::accumulate(ll_exc.begin(), ll_exc.end(), 0) / double(reps);
    c.require(std::abs(ll_rate - 0.05) <= 0.02,
              "loglik size = " + fmt(ll_rate, 3) + " vs 0.05 +-0.02");
    const std::vector<std::string> names = {"beta0", "beta1", "beta2", "sigma",
                                            "rho"};
    for (int j = 0; j < 5; ++j) {
      double rate = 0.0;
      for (int r = 0; r < reps; ++r)
        rate += par_exc[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
      rate /= reps;
      c.require(std::abs(rate - 0.05) <= 0.02,
                names[static_cast<std::size_t>(j)] + " size = " + fmt(rate, 3) +
                    " vs 0.05 +-0.02");
    }
  }
  return c;
}

// ---------- criterion 9: GPD oracle equivalence ----------
Check criterion_9() {
  Check c;

  // (a) season exceedance probability vs a Monte Carlo season oracle
  struct Point {
    double a, sigma, lambda, y0;
  };
  const std::vector<Point> points = {
      {0.1821, 0.0701, 24.375, 0.285}, {0.10, 0.06, 24.375, 0.285},
      {-0.20, 0.05, 24.375, 0.285},    {0.05, 0.08, 10.0, 0.25},
      {0.30, 0.12, 24.375, 0.285},
  };
  const int seasons = 1000000;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Point& pt = points[k];
    const SeasonModel season{pt.lambda, pt.y0, 10.005};
    const double p = season_exceed_prob(pt.a, pt.sigma, season);
    std::vector<int> hit_chunks(100, 0);
    parallel_for(100, [&](std::size_t chunk) {
      Rng rng = seeded_rng(90001 + static_cast<std::uint64_t>(k), chunk);
      std::poisson_distribution<int> pois(pt.lambda);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      int hits = 0;
      for (int s = 0; s < seasons / 100; ++s) {
        const int count = pois(rng);
        bool any = false;
        for (int i = 0; i < count && !any; ++i) {
          const double u = 1.0 - unif(rng);
          const double y =
              (std::abs(pt.a) < 1e-12)
                  ? -pt.sigma * std::log(u)
                  : (pt.sigma / pt.a) * (1.0 - std::pow(u, pt.a));
          if (y >= pt.y0) any = true;
        }
        if (any) ++hits;
      }
      hit_chunks[chunk] = hits;
    });
    const double mc =
        std::accumulate(hit_chunks.begin(), hit_chunks.end(), 0) /
        static_cast<double>(seasons);
    const double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / seasons);
    c.require(std::abs(mc - p) <= 3.0 * se,
              "point " + std::to_string(k + 1) + ": |mc - p| = " +
                  fmt(std::abs(mc - p), 3) + " <= 3 se = " + fmt(3.0 * se, 3));
  }

  // (b) profile vs the constrained grid oracle at 10 p0 values
  {
    Rng rng = seeded_rng(90100);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> y(195);
    for (auto& v : y) {
      const double u = 1.0 - unif(rng);
      v = (0.0701 / 0.1821) * (1.0 - std::pow(u, 0.1821));
    }
    const SeasonModel season{24.375, 0.285, 10.005};
    double max_gap = 0.0;
    for (int i = 1; i <= 10; ++i) {
      const double p0 = 0.02 * i;  // 0.02 .. 0.20
      // implementation route: closed-form elimination + golden section
      const auto neg = [&](double a) {
        const double s = constrained_sigma(a, p0, season);
        if (!(s > 0.0) || !std::isfinite(s))
          return std::numeric_limits<double>::infinity();
        return -gpd_loglik(a, s, y);
      };
      double fmin = 0.0;
      multistart_minimize_1d(neg, -2.0, 2.0, 20, 1e-11, &fmin);
      // oracle route: fine a grid, sigma solved by bisection on p(a, sigma)
      double best = -std::numeric_limits<double>::infinity();
      for (int gi = 0; gi <= 4000; ++gi) {
        const double a = -1.5 + 3.0 * gi / 4000.0;
        if (std::abs(a) < 1e-7) continue;
        const auto pfun = [&](double s) {
          const double u = 1.0 - a * season.y0 / s;
          if (a > 0 && u <= 0) return 0.0;
          return -std::expm1(-season.lambda * std::pow(u, 1.0 / a));
        };
        double lo = (a > 0) ? a * season.y0 + 1e-9 : 1e-6, hi = 10.0;
        if (pfun(lo) > p0 || pfun(hi) < p0) continue;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (pfun(mid) < p0) lo = mid; else hi = mid;
        }
        best = std::max(best, gpd_loglik(a, 0.5 * (lo + hi), y));
      }
      max_gap = std::max(max_gap, std::abs(-fmin - best));
    }
    c.require(max_gap <= 1e-4, "max |profile - grid oracle| = " +
                                   fmt(max_gap, 3) + " <= 1e-4");
  }

  // (c) Wilks coverage of the 90% p interval
  {
    const int reps = 500;
    const double a_true = 0.1821, s_true = 0.0701;
    const SeasonModel season{24.375, 0.285, 10.005};
    const double p_true = season_exceed_prob(a_true, s_true, season);
    std::vector<int> covered(reps, 0);
    parallel_for(static_cast<std::size_t>(reps), [&](std::size_t rep) {
      Rng rng = seeded_rng(90200, rep);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      std::vector<double> y(195);
      for (auto& v : y) {
        const double u = 1.0 - unif(rng);
        v = (s_true / a_true) * (1.0 - std::pow(u, a_true));
      }
      const GpdFit fit = gpd_fit(y);
      const auto neg = [&](double a) {
        const double s = constrained_sigma(a, p_true, season);
        if (!(s > 0.0) || !std::isfinite(s))
          return std::numeric_limits<double>::infinity();
        return -gpd_loglik(a, s, y);
      };
      double fmin = 0.0;
      multistart_minimize_1d(neg, -2.0, 2.0, 20, 1e-11, &fmin);
      const double dev = 2.0 * (fit.loglik_max + fmin);
      covered[rep] = chisq_cdf(std::max(0.0, dev), 1.0) <= 0.90 ? 1 : 0;
    });
    const double rate =
        std::accumulate(covered.begin(), covered.end(), 0) / double(reps);
    c.require(std::abs(rate - 0.90) <= 0.03,
              "Wilks 90% coverage = " + fmt(rate, 4) + " vs 0.90 +-0.03");
  }
  return c;
}

// ---------- criterion 10: GLS-AR dense-oracle equivalence ----------
Check criterion_10() {
  Check c;
  Rng rng = seeded_rng(100001);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> urho(-0.9, 0.9);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 8);  // n <= 10
    std::vector<int> times;
    int year = 1900;
    for (int i = 0; i < n; ++i) {
      year += 1 + static_cast<int>(rng() % 5);  // gapped axis
      times.push_back(year);
    }
    GlsArModel m;
    m.X.resize(n, 2);
    for (int i = 0; i < n; ++i) {
      m.X(i, 0) = 1.0;
      m.X(i, 1) = gauss(rng);
    }
    m.times = times;
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = 2.0 * gauss(rng);
    GlsArParams p;
    p.beta = Eigen::VectorXd(2);
    p.beta << gauss(rng), gauss(rng);
    p.sigma = 0.4 + std::abs(gauss(rng));
    p.rho = urho(rng);
    const double fast = loglik(m, p, y);
    const double dense =
        oracles::dense_gaussian_loglik(times, m.X, p.beta, p.sigma, p.rho, y);
    worst = std::max(worst, std::abs(fast - dense) /
                                std::max(1.0, std::abs(dense)));
  }
  c.require(worst <= 1e-10, "max relative gap over 100 instances = " +
                                fmt(worst, 3) + " <= 1e-10");
  return c;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Check()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "fusion illustration A (per-source and fused intervals)", criterion_1},
      {2, "AR(1) variance inflation factor", criterion_2},
      {3, "crossing cap identity", criterion_3},
      {4, "simulated null quantiles (weighted 3.18, plain 1.358)", criterion_4},
      {5, "CD calibration for rho (KS vs uniform)", criterion_5},
      {6, "crossing-year coverage", criterion_6},
      {7, "segmented break recovery and AIC ranking", criterion_7},
      {8, "monitoring bridge size and power", criterion_8},
      {9, "GPD oracles (season MC, profile grid, Wilks coverage)", criterion_9},
      {10, "GLS-AR dense-matrix oracle equivalence", criterion_10},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& criterion : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), criterion.id) ==
            selected.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    Check c = criterion.run();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] criterion %2d: %s (%.1fs) %s\n",
                c.ok ? "PASS" : "FAIL", criterion.id, criterion.name, secs,
                c.detail.str().c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
  }
  return failures;
}

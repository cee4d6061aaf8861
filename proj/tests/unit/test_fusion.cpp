#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ccstat/confidence.hpp"
#include "ccstat/errors.hpp"
#include "ccstat/fusion.hpp"
#include "ccstat/rng.hpp"
#include "ccstat/stats.hpp"

using namespace ccstat;

namespace {

ConfidenceCurve normal_cc(double hat, double s, double lo, double hi,
                          int points) {
  ConfidenceCurve cc;
  cc.grid = linspace(lo, hi, points);
  cc.level.resize(cc.grid.size());
  for (std::size_t i = 0; i < cc.grid.size(); ++i)
    cc.level[i] = std::abs(1.0 - 2.0 * norm_cdf((cc.grid[i] - hat) / s));
  cc.point_estimate = hat;
  return cc;
}

}  // namespace

TEST_CASE("normal_conversion: anchors and the closed-form identity") {
  ConfidenceCurve cc;
  cc.grid = {0.0, 1.0, 2.0};
  cc.level = {0.0, 0.95, 1.0};
  const std::vector<double> ll = normal_conversion(cc);
  CHECK(ll[0] == doctest::Approx(0.0));
  CHECK(ll[1] == doctest::Approx(-0.5 * 3.841459).epsilon(1e-5));
  CHECK(std::isinf(ll[2]));
  CHECK(ll[2] < 0.0);

  // for a normal-shaped cc the conversion is exactly -(phi-hat)^2/(2 s^2)
  const ConfidenceCurve ncc = normal_cc(1.0, 0.5, -2.0, 4.0, 601);
  const std::vector<double> nll = normal_conversion(ncc);
  for (std::size_t i = 0; i < ncc.grid.size(); ++i) {
    const double z = (ncc.grid[i] - 1.0) / 0.5;
    CHECK(nll[i] == doctest::Approx(-0.5 * z * z).epsilon(1e-6));
  }
}

TEST_CASE("fuse: two equal normal sources tighten by sqrt(2)") {
  const double s = 0.8, hat = 3.0;
  const ConfidenceCurve src = normal_cc(hat, s, 0.0, 6.0, 1201);
  const ConfidenceCurve fused = fuse({{"a", src}, {"b", src}},
                                     linspace(0.0, 6.0, 1201));
  const Interval iv = interval(fused, 0.90);
  const double half = 1.6448536 * s / std::sqrt(2.0);
  CHECK(iv.lo == doctest::Approx(hat - half).epsilon(2e-3));
  CHECK(iv.hi == doctest::Approx(hat + half).epsilon(2e-3));
  CHECK(fused.point_estimate == doctest::Approx(hat).epsilon(1e-6));

  // fused interval sits inside the wider source interval at every level
  for (double level : {0.5, 0.8, 0.95}) {
    const Interval f = interval(fused, level);
    const Interval s1 = interval(src, level);
    CHECK(f.lo >= s1.lo - 1e-9);
    CHECK(f.hi <= s1.hi + 1e-9);
  }
}

TEST_CASE("fuse: single source round-trips through the conversion") {
  const ConfidenceCurve src = normal_cc(2.0, 0.6, -1.0, 5.0, 1501);
  const ConfidenceCurve back = fuse({{"only", src}}, src.grid);
  for (std::size_t i = 0; i < src.grid.size(); ++i)
    CHECK(back.level[i] == doctest::Approx(src.level[i]).epsilon(1e-6));
}

TEST_CASE("fuse: illustration-A style chi-squared sources") {
  const ChisqSdCd c1 = chisq_sd_cd(3.33, 6);
  const ChisqSdCd c2 = chisq_sd_cd(5.55, 6);
  const std::vector<double> grid = linspace(1.0, 15.0, 1001);
  const auto to_source = [&](const ChisqSdCd& c, const char* label) {
    SourceCC src;
    src.label = label;
    src.curve = cc_from_cd(c.tabulate(grid));
    return src;
  };
  const ConfidenceCurve fused =
      fuse({to_source(c1, "s1"), to_source(c2, "s2")}, grid);
  const Interval iv = interval(fused, 0.95);
  CHECK(iv.lo == doctest::Approx(3.35).epsilon(0.02));
  CHECK(iv.hi == doctest::Approx(7.85).epsilon(0.02));

  // the fused point estimate maximizes the summed conversions
  std::vector<double> sum(grid.size(), 0.0);
  for (const auto& c : {c1, c2}) {
    const ConfidenceCurve cc = cc_from_cd(c.tabulate(grid));
    const std::vector<double> ll = normal_conversion(cc);
    for (std::size_t i = 0; i < grid.size(); ++i) sum[i] += ll[i];
  }
  const auto imax = std::max_element(sum.begin(), sum.end()) - sum.begin();
  CHECK(fused.point_estimate ==
        doctest::Approx(grid[static_cast<std::size_t>(imax)]));
}

TEST_CASE("fuse error paths") {
  const ConfidenceCurve src = normal_cc(2.0, 0.6, 1.0, 3.0, 101);
  CHECK_THROWS_AS(fuse({}, linspace(0.0, 5.0, 11)), std::invalid_argument);
  // source grid does not cover the fusion grid
  CHECK_THROWS_AS(fuse({{"s", src}}, linspace(0.0, 5.0, 101)),
                  std::invalid_argument);
}

TEST_CASE("chisq_sd_cd: paper intervals and the median identity") {
  const ChisqSdCd c1 = chisq_sd_cd(3.33, 6);
  const Interval iv1 = c1.central_interval(0.95);
  CHECK(iv1.lo == doctest::Approx(2.15).epsilon(0.005));
  CHECK(iv1.hi == doctest::Approx(7.33).epsilon(0.005));

  const ChisqSdCd c2 = chisq_sd_cd(5.55, 6);
  const Interval iv2 = c2.central_interval(0.95);
  CHECK(iv2.lo == doctest::Approx(3.58).epsilon(0.005));
  CHECK(iv2.hi == doctest::Approx(12.22).epsilon(0.005));

  // C at sigma_hat sqrt(m / chi2_{m,0.5}) is one half
  const double med = 3.33 * std::sqrt(6.0 / chisq_quantile(0.5, 6.0));
  CHECK(c1.cdf(med) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("nonparam_quantile_cd: step structure, tails, coverage") {
  Rng rng = seeded_rng(60);
  std::normal_distribution<double> gauss(5.0, 2.0);
  std::vector<double> sample(20);
  for (auto& v : sample) v = gauss(rng);
  const NonparamQuantileCd cd = nonparam_quantile_cd(sample, 0.75);

  // below the sample minimum the cd carries only the half-correction mass
  const double below =
      cd.cdf(*std::min_element(sample.begin(), sample.end()) - 1.0);
  CHECK(below == doctest::Approx(0.5 * binom_pmf(0, 20, 0.75)).epsilon(1e-12));
  CHECK(below < 1e-6);

  // non-decreasing across the whole range
  double last = -1.0;
  for (double g = -2.0; g < 12.0; g += 0.05) {
    const double c = cd.cdf(g);
    CHECK(c >= last - 1e-15);
    last = c;
  }

  // coverage of the 90% interval for the 0.75-quantile of a known normal
  const double truth = 5.0 + 2.0 * norm_quantile(0.75);
  int covered = 0;
  const int reps = 2000;
  for (int rep = 0; rep < reps; ++rep) {
    Rng r2 = seeded_rng(61, static_cast<std::uint64_t>(rep));
    std::vector<double> s(20);
    for (auto& v : s) v = gauss(r2);
    const NonparamQuantileCd c = nonparam_quantile_cd(s, 0.75);
    const double lo = c.quantile(0.05), hi = c.quantile(0.95);
    if (lo <= truth && truth <= hi) ++covered;
  }
  const double rate = static_cast<double>(covered) / reps;
  CHECK(rate > 0.86);
  CHECK(rate < 0.94);
}

TEST_CASE("normal_prior_cd: median, symmetry, and the stated interval") {
  const NormalPriorCd cd = normal_prior_cd(7.50, 1.25);
  CHECK(cd.cdf(7.50) == doctest::Approx(0.5));
  CHECK(cd.quantile(0.05) == doctest::Approx(5.444).epsilon(1e-3));
  CHECK(cd.quantile(0.95) == doctest::Approx(9.556).epsilon(1e-3));
  for (double d : {0.3, 1.1, 2.6})
    CHECK(cd.cdf(7.50 + d) + cd.cdf(7.50 - d) == doctest::Approx(1.0));
}

TEST_CASE("round trip: cc -> conversion -> deviance -> chi-squared map") {
  const ConfidenceCurve cc = normal_cc(1.0, 0.4, -1.0, 3.0, 801);
  const std::vector<double> ll = normal_conversion(cc);
  const double lmax = *std::max_element(ll.begin(), ll.end());
  for (std::size_t i = 0; i < cc.grid.size(); ++i) {
    const double dev = 2.0 * (lmax - ll[i]);
    CHECK(chisq_cdf(dev, 1.0) == doctest::Approx(cc.level[i]).epsilon(1e-6));
  }
}

TEST_CASE("normal_quantile_profile_cc: centered at the ML quantile") {
  Rng rng = seeded_rng(62);
  std::normal_distribution<double> gauss(6.0, 1.5);
  std::vector<double> sample(20);
  for (auto& v : sample) v = gauss(rng);
  double mean = 0.0;
  for (double v : sample) mean += v;
  mean /= sample.size();
  double var = 0.0;
  for (double v : sample) var += (v - mean) * (v - mean);
  var /= sample.size();
  const double gamma_hat = mean + norm_quantile(0.75) * std::sqrt(var);

  const ConfidenceCurve cc =
      normal_quantile_profile_cc(sample, 0.75, linspace(4.0, 10.0, 801));
  CHECK(cc.point_estimate == doctest::Approx(gamma_hat).epsilon(2e-3));
  const Interval iv = interval(cc, 0.90);
  CHECK(iv.lo < gamma_hat);
  CHECK(iv.hi > gamma_hat);
}

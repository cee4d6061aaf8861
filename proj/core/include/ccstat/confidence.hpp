#pragma once

#include <functional>
#include <vector>

#include "ccstat/gls_ar.hpp"

namespace ccstat {

// Tabulated confidence distribution: a non-decreasing cdf over an ordered
// focus-parameter grid.
struct ConfidenceDistribution {
  std::vector<double> grid;
  std::vector<double> cdf;
};

// Tabulated confidence curve.  Levels live in [0,1], touch 0 at the point
// estimate, and may be capped below 1 (the crossing-year curves are).
struct ConfidenceCurve {
  std::vector<double> grid;
  std::vector<double> level;
  double point_estimate = 0.0;
  double cap = 1.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_unbounded = false;  // sub-level set runs past the grid / cap
  bool hi_unbounded = false;
};

// cc = |1 - 2 C|, point estimate at the CD median.
ConfidenceCurve cc_from_cd(const ConfidenceDistribution& cd);

// Sub-level set {focus : cc(focus) <= level}, outermost crossings found by
// linear interpolation.  Levels at or above the cap give an interval
// flagged unbounded on the capped side.
Interval interval(const ConfidenceCurve& cc, double level);

// Wilks recipe: cc(phi) = G_1(D(phi)) with D the profile deviance.  Fails
// loudly when the profile maximum sits on the grid boundary (extrapolated
// intervals would be fiction) or the profile is flat.
ConfidenceCurve profile_cc(const std::function<double(double)>& profile_loglik,
                           const std::vector<double>& focus_grid);
ConfidenceCurve profile_cc_from_values(const std::vector<double>& focus_grid,
                                       const std::vector<double>& loglik);

// Signed-root-deviance CD value at one focus point: Phi(sign sqrt D).
double profile_cd_value(double focus, double focus_hat, double deviance);

// Confidence curve for the AR(1) coefficient: the log-likelihood is
// profiled over every other parameter at each grid point.
ConfidenceCurve cc_rho(const GlsArModel& model, const Eigen::VectorXd& y,
                       const std::vector<double>& rho_grid);

std::vector<double> linspace(double lo, double hi, int points);

}  // namespace ccstat

#pragma once

#include <vector>

#include "ccstat/confidence.hpp"

namespace ccstat {

// Generalized Pareto model G(y) = 1 - (1 - a y / sigma)^{1/a} for threshold
// exceedances y > 0.  Positive a gives a bounded upper endpoint sigma/a;
// a -> 0 is the exponential limit.
struct GpdFit {
  double a = 0.0;
  double sigma = 0.0;
  int n = 0;
  double loglik_max = 0.0;
  bool support_ok = false;
  bool converged = false;
  bool boundary = false;  // optimum pinned against the support edge
};

// y_i = offset - r_i; every transformed value must be positive.
std::vector<double> transform(const std::vector<double>& raw, double offset);

// Exact log-likelihood; support violations (and sigma <= 0) return -inf so
// optimizers stay inside the domain.  |a| below 1e-8 switches to the
// exponential-model limit.
double gpd_loglik(double a, double sigma, const std::vector<double>& y);

GpdFit gpd_fit(const std::vector<double>& y);

// A season produces Pois(lambda) top events; p is the chance the season
// maximum reaches the threshold y0 on the transformed scale.
struct SeasonModel {
  double lambda = 1.0;
  double y0 = 0.0;
  double transform_offset = 0.0;
};

double season_exceed_prob(double a, double sigma, const SeasonModel& season);

// Profile-likelihood confidence curve for p over p_grid: the constraint
// p(a, sigma) = p0 eliminates sigma = a y0 / (1 - (alpha0/lambda)^a) with
// alpha0 = -log(1 - p0), leaving a one-dimensional maximization in a
// (multi-start golden section; the constrained profile can be multimodal).
ConfidenceCurve profile_cc_p(const std::vector<double>& y,
                             const SeasonModel& season,
                             const std::vector<double>& p_grid);

// sigma on the constraint manifold at shape a (the elimination above).
double constrained_sigma(double a, double p0, const SeasonModel& season);

// Reparametrizes a cc over p onto the shock-barometer scale 100(1-p);
// confidence levels carry over unchanged.
ConfidenceCurve shock_barometer(const ConfidenceCurve& cc_p);

}  // namespace ccstat

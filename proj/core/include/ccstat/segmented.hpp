#pragma once

#include <cstdint>
#include <vector>

#include "ccstat/series.hpp"

namespace ccstat {

// Connected two-piece trend: a_L + b_L (x - xbar) up to year tau, then
// a_R + b_R (x - xbar), knotted continuously at tau + 1/2 on the covariate
// scale.  Five parameters in total (three free line coefficients after the
// continuity constraint, plus tau and sigma).
struct SegmentedFit {
  int tau = 0;  // break year
  double a_l = 0.0, b_l = 0.0;
  double a_r = 0.0, b_r = 0.0;
  double sigma = 0.0;  // ML divisor n
  double xbar = 0.0;
  double loglik_max = 0.0;
  double aic = 0.0;
  std::vector<int> tau_grid;
  std::vector<double> profile;  // profile log-likelihood per candidate tau
  bool degenerate = false;      // exact fit, zero residual
};

struct SegmentedCoefs {
  double a_l = 0.0, b_l = 0.0, a_r = 0.0, b_r = 0.0;
  double q = 0.0;  // residual sum of squares
};

// Profile log-likelihood at one candidate break year: the inner
// maximization over (a_R, b_L, b_R) with a_L eliminated through the
// continuity constraint is a linear least-squares problem, and sigma is
// profiled as Q/n.
double segmented_profile_loglik(const GappedSeries& series, int tau,
                                SegmentedCoefs* coefs = nullptr);

// Exhaustive scan over break years with at least i0 points on either side;
// ties broken toward the smallest tau.
SegmentedFit fit_segmented(const GappedSeries& series, int i0 = 10);

// Parametric bootstrap of the segmented-vs-linear log-likelihood gain under
// the straight-line null.  The AIC's regularity assumptions do not hold for
// a break parameter, so significance is assessed by simulation.
struct BreakTest {
  double gain = 0.0;     // observed ll_max(segmented) - ll_max(linear)
  double p_value = 0.0;
  int replicates = 0;
};

BreakTest segmented_break_test(const GappedSeries& series, int i0,
                               int replicates, std::uint64_t seed);

}  // namespace ccstat

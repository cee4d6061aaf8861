#pragma once

#include <string>
#include <vector>

#include "ccstat/confidence.hpp"

namespace ccstat {

// One information source for the II-CC-FF pipeline: a confidence curve for
// the common focus parameter, tabulated on a grid covering the fusion grid.
struct SourceCC {
  std::string label;
  ConfidenceCurve curve;
};

// Confidence conversion: l*(phi) = -1/2 G_1^{-1}(cc(phi)), the pseudo
// log-likelihood with maximum 0 at the point estimate.  Levels of exactly 1
// map to -infinity (excluded support).
std::vector<double> normal_conversion(const ConfidenceCurve& cc);

// Focused fusion: interpolate each source curve onto the grid (linear in
// confidence level), sum the converted log-likelihoods, and map the deviance
// back through the chi-squared(1) distribution.
ConfidenceCurve fuse(const std::vector<SourceCC>& sources,
                     const std::vector<double>& grid);

// CD for a normal-data standard deviation estimate with m degrees of
// freedom: C(sigma) = 1 - G_m(m sigmahat^2 / sigma^2).
struct ChisqSdCd {
  double sigma_hat = 0.0;
  int m = 0;

  double cdf(double sigma) const;
  double quantile(double u) const;
  Interval central_interval(double level) const;
  ConfidenceDistribution tabulate(const std::vector<double>& grid) const;
};

ChisqSdCd chisq_sd_cd(double sigma_hat, int m);

// Half-corrected binomial order-statistic CD for the q-quantile of an
// unknown distribution; a step function in gamma.
struct NonparamQuantileCd {
  std::vector<double> sorted;
  double q = 0.5;

  double cdf(double gamma) const;
  double quantile(double u) const;  // +-infinity outside the attainable range
  ConfidenceDistribution tabulate(const std::vector<double>& grid) const;
};

NonparamQuantileCd nonparam_quantile_cd(std::vector<double> sample, double q);

// A Bayesian source expressed as a normal posterior.
struct NormalPriorCd {
  double mean = 0.0;
  double sd = 1.0;

  double cdf(double gamma) const;
  double quantile(double u) const;
  ConfidenceDistribution tabulate(const std::vector<double>& grid) const;
};

NormalPriorCd normal_prior_cd(double mean, double sd);

// Profile-deviance confidence curve for the q-quantile xi + z_q sigma of a
// normal sample (the parametric source in the quantile fusion example).
ConfidenceCurve normal_quantile_profile_cc(const std::vector<double>& sample,
                                           double q,
                                           const std::vector<double>& grid);

}  // namespace ccstat

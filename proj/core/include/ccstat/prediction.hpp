#pragma once

#include <Eigen/Core>
#include <vector>

#include "ccstat/confidence.hpp"
#include "ccstat/series.hpp"

namespace ccstat {

// Straight-line regression summary in the centered parametrization
// y = ahat + bhat (x - xbar), with sigmahat^2 = RSS / (n-2) so the
// prediction and crossing pivots are exact t / F quantities.
struct LinearFitSummary {
  double ahat = 0.0;
  double bhat = 0.0;
  double sigmahat = 0.0;
  int n = 0;
  int m = 0;  // n - 2
  double xbar = 0.0;
  double m_n = 0.0;  // sum of squared covariate deviations
};

LinearFitSummary linear_fit_summary(const GappedSeries& series);

// Closed-form prediction CD for a future observation: t_m location-scale.
struct PredictionCd {
  double center = 0.0;
  double scale = 0.0;
  int m = 0;

  double cdf(double y_new) const;
  double quantile(double u) const;
  Interval central_interval(double level) const;
  ConfidenceDistribution tabulate(double lo, double hi, int points) const;
};

PredictionCd predict_cd(const LinearFitSummary& fit, double x_new);

// Crossing-year machinery for the threshold y0 on the fitted upward trend.
struct CrossingCap {
  double cap = 0.0;     // F_{1,m}(M_n bhat^2 / sigmahat^2) = 1 - p*
  double t_stat = 0.0;  // M_n^{1/2} bhat / sigmahat
};

CrossingCap crossing_cap(const LinearFitSummary& fit);

// cc(x0); 0 at the crossing point estimate, capped below 1.
double crossing_level(const LinearFitSummary& fit, double y0, double x0);

ConfidenceCurve crossing_cc(const LinearFitSummary& fit, double y0,
                            const std::vector<double>& x0_grid);

// Exact interval endpoints from the defining quadratic equality; levels at
// or above the cap come back unbounded on the far side.
Interval crossing_interval(const LinearFitSummary& fit, double y0,
                           double level);

double crossing_estimate(const LinearFitSummary& fit, double y0);

// Polynomial-trend extension (degree 2 by default, cubic available as a
// configuration degree).  Same pivot construction with the hat-matrix
// variance factor; crossing roots are located numerically on the grid.
struct PolyTrendFit {
  int degree = 2;
  Eigen::VectorXd theta;  // coefficients in powers of (x - xbar)
  double sigmahat = 0.0;  // RSS / (n - p)
  int n = 0;
  int m = 0;  // n - (degree + 1)
  double xbar = 0.0;
  Eigen::MatrixXd xtx_inv;

  double trend(double x) const;
  double mean_var_factor(double x) const;  // x0' (X'X)^{-1} x0
};

PolyTrendFit poly_trend_fit(const GappedSeries& series, int degree);

PredictionCd predict_cd(const PolyTrendFit& fit, double x_new);

double crossing_level(const PolyTrendFit& fit, double y0, double x0);

ConfidenceCurve crossing_cc(const PolyTrendFit& fit, double y0,
                            const std::vector<double>& x0_grid);

}  // namespace ccstat

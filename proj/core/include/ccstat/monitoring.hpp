#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccstat/gls_ar.hpp"
#include "ccstat/series.hpp"

namespace ccstat {

enum class BridgeKind { kSlope, kMean, kLoglik, kParameter };

// Under no change, slope and mean bridges converge to the weighted bridge
// W0(s)/sqrt(s(1-s)); the log-likelihood-maxima and per-parameter bridges
// converge to a plain Brownian bridge.
bool bridge_is_weighted(BridgeKind kind);

struct BridgeProcess {
  BridgeKind kind = BridgeKind::kSlope;
  std::vector<int> taus;       // calendar time of the last left-side point
  std::vector<double> values;  // NaN at holes
  std::vector<int> holes;      // taus where the refit did not converge
  double eps = 0.0;            // window [eps, 1-eps] on the s = tau/n scale
  double max_abs = 0.0;        // over the window, holes skipped
  std::string param_name;      // parameter bridges only
};

// Slope-change monitoring for the straight-line trend: side-wise least
// squares slopes normalized by the full-data residual sd.
BridgeProcess slope_bridge(const GappedSeries& series, int i0);

// Running two-sample t scan with the AR(1) variance inflation factor.
BridgeProcess mean_bridge(const GappedSeries& series, int i0, double rho_hat);

// Moment AR(1) coefficient of the standardized series (consecutive-year
// pairs, divisor n) and the long-run variance inflation sqrt((1+r)/(1-r)).
double ar1_moment_estimate(const GappedSeries& series);
double inflation_factor(double rho);

// Shared scan of partial-data ML fits for the lagged AR regression: one
// profile-rho fit per tau = i0..n.
struct LaggedScan {
  std::vector<int> row_counts;
  std::vector<int> taus;              // year of row tau
  std::vector<double> loglik;         // NaN at holes
  std::vector<Eigen::VectorXd> theta; // (b0, b1, b2, sigma, rho) per tau
  std::vector<int> holes;
};

LaggedScan scan_lagged(const LaggedDesign& design, int i0);

// Z_n(tau) = (1/sqrt(n)) {l_max,tau - (tau/n) l_max,n} / kappa with
// kappa = sqrt(1/2) for this Gaussian model family.
BridgeProcess loglik_bridge(const LaggedDesign& design, int i0);
BridgeProcess loglik_bridge(const LaggedScan& scan, int n_rows, int i0);

// M_{n,j}(tau) = (tau/n) (theta_j,tau - theta_j,n) / se_j, one process per
// parameter; se_j from the full-data observed information.
std::vector<BridgeProcess> param_bridges(const LaggedDesign& design, int i0);
std::vector<BridgeProcess> param_bridges(const LaggedScan& scan,
                                         const GlsArFit& full_fit, int n_rows,
                                         int i0);

// Simulated null quantiles for max |V| over [eps, 1-eps], V either the
// weighted bridge (slope/mean kinds) or the plain bridge (loglik/parameter
// kinds).  Deterministic given (seed, paths, grid_steps).
struct NullQuantiles {
  double eps = 0.0;
  bool weighted = true;
  int paths = 0;
  std::uint64_t seed = 0;
  std::map<double, double> quantiles;
  std::vector<double> maxima;  // sorted simulated maxima

  double p_value(double observed_max) const;
};

NullQuantiles simulate_null_quantiles(BridgeKind kind, double eps,
                                      const std::vector<double>& levels,
                                      int paths, std::uint64_t seed,
                                      int grid_steps = 2000);
NullQuantiles simulate_null_quantiles(bool weighted, double eps,
                                      const std::vector<double>& levels,
                                      int paths, std::uint64_t seed,
                                      int grid_steps = 2000);

}  // namespace ccstat

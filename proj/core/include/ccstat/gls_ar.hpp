#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "ccstat/series.hpp"

namespace ccstat {

// Error families for y ~ X beta + errors with AR(1) correlation
// rho^{|u-t|} at calendar-year distance |u-t|.
enum class ErrorFamily {
  kNormal,           // sigma^2 A_rho
  kLogQuadVariance,  // sigma_t = sigma exp(g1 w_t + g2 w_t^2), cov D A_rho D
  kStudentT,         // elliptical t_nu with scale sigma^2 A_rho
};

struct GlsArModel {
  Eigen::MatrixXd X;                      // n x p, full column rank
  std::vector<std::string> column_names;  // optional, size p
  std::vector<int> times;                 // strictly increasing calendar years
  ErrorFamily family = ErrorFamily::kNormal;
  std::vector<double> w;  // normalized covariate, required for kLogQuadVariance
};

struct GlsArParams {
  Eigen::VectorXd beta;
  double sigma = 1.0;
  double rho = 0.0;
  double gamma1 = 0.0, gamma2 = 0.0;  // kLogQuadVariance only
  double nu = 10.0;                   // kStudentT only, > 2
};

struct GlsArFit {
  std::vector<std::string> param_names;  // beta..., sigma, rho[, extras]
  Eigen::VectorXd beta;
  double sigma = 0.0;
  double rho = 0.0;
  std::optional<std::pair<double, double>> gamma;
  std::optional<double> nu;
  double loglik_max = 0.0;
  double aic = 0.0;
  Eigen::MatrixXd obs_info;  // natural scale, at the optimum
  Eigen::VectorXd se;        // sqrt(diag(obs_info^{-1}))
  bool converged = false;
  bool boundary_rho = false;  // |rho_hat| ran into the stationarity edge
  bool degenerate = false;    // zero residual variance
  bool info_pd = true;        // observed information positive definite

  int dim() const { return static_cast<int>(param_names.size()); }
};

// Exact whitening transform for the AR(1) correlation matrix on a gapped
// integer time axis.  The process is Markov, so A_rho factorizes through
// the innovations: e_1 = v_1, e_k = (v_k - r_{k-1} v_{k-1}) / sqrt(1-r_{k-1}^2)
// with r_k = rho^{t_{k+1}-t_k}, giving v' A^{-1} v = sum e_k^2 and
// log|A| = sum log(1 - r_k^2).  Equivalent to a dense Cholesky solve, at
// O(n) cost, which keeps the monitoring scans and Monte Carlo calibration
// runs tractable.
class ArWhitener {
 public:
  ArWhitener(const std::vector<int>& times, double rho);

  double logdet() const { return logdet_; }
  void apply_in_place(Eigen::VectorXd& v) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  void apply_columns(Eigen::MatrixXd& m) const;

 private:
  std::vector<double> r_;        // step correlations
  std::vector<double> inv_sd_;   // 1 / sqrt(1 - r^2)
  double logdet_ = 0.0;
};

// Log-likelihood of the responses under the model at the given parameters.
// Exact Gaussian (or multivariate-t) log density; throws for |rho| >= 1 or
// non-finite responses.
double loglik(const GlsArModel& model, const GlsArParams& params,
              const Eigen::VectorXd& y);

struct FitOptions {
  int max_retries = 5;
  double grad_tol = 1e-6;     // on the transformed scale
  bool compute_obs_info = true;
  double rho_boundary = 0.999;
};

// Maximum likelihood fit.  beta is profiled by generalized least squares
// given the correlation/variance parameters; the outer optimization runs on
// (log sigma, atanh rho[, gamma | log(nu-2)]) with a Nelder-Mead start and
// a BFGS polish.  Throws numeric_error after exhausting retries.
GlsArFit fit_mle(const GlsArModel& model, const Eigen::VectorXd& y,
                 const FitOptions& options = {});

// Ordinary least squares (rho frozen at 0), ML variance divisor n.
GlsArFit fit_ols(const GlsArModel& model, const Eigen::VectorXd& y);

// Eq.-style AIC: twice the maximized log-likelihood minus twice the
// parameter dimension.
double aic(const GlsArFit& fit);
double aic(double loglik_max, int dim);

// AR(1) trend model fit for a lagged-covariate design [1, x_{t-1}, x_{t-2}].
GlsArFit fit_lagged(const LaggedDesign& design, const FitOptions& options = {});

// Profile log-likelihood over (beta, sigma) with rho held fixed, for the
// normal family (closed form) or the other families (inner optimization).
double profile_loglik_given_rho(const GlsArModel& model,
                                const Eigen::VectorXd& y, double rho);

// Fast 1-d ML fit over rho for a normal-family model; used by monitoring
// scans where the same design is refit many times.
struct ProfileRhoFit {
  double rho = 0.0;
  double sigma = 0.0;
  Eigen::VectorXd beta;
  double loglik = 0.0;
  bool boundary = false;
};

ProfileRhoFit fit_profile_rho(const Eigen::MatrixXd& X,
                              const Eigen::VectorXd& y,
                              const std::vector<int>& times,
                              double rho_lo = -0.999, double rho_hi = 0.999);

// Builds the standard trend model [1, x] on the series' calendar axis with
// covariate x = year - x_origin.
GlsArModel trend_model(const GappedSeries& series, double x_origin = 0.0,
                       ErrorFamily family = ErrorFamily::kNormal);

}  // namespace ccstat

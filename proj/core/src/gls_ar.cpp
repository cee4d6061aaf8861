#include "ccstat/gls_ar.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccstat/errors.hpp"
#include "ccstat/optimize.hpp"
#include "ccstat/rng.hpp"

namespace ccstat {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

double step_correlation(double rho, int gap) {
  if (gap == 1) return rho;
  return std::pow(rho, static_cast<double>(gap));
}

void check_times(const std::vector<int>& times) {
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw std::invalid_argument("ar: times must be strictly increasing");
}

}  // namespace

ArWhitener::ArWhitener(const std::vector<int>& times, double rho) {
  if (!(std::abs(rho) < 1.0))
    throw std::invalid_argument("ar: |rho| >= 1 gives a singular correlation");
  check_times(times);
  const std::size_t n = times.size();
  if (n == 0) throw std::invalid_argument("ar: empty time axis");
  r_.resize(n - 1);
  inv_sd_.resize(n - 1);
  logdet_ = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double r = step_correlation(rho, times[k + 1] - times[k]);
    const double one_minus = 1.0 - r * r;
    r_[k] = r;
    inv_sd_[k] = 1.0 / std::sqrt(one_minus);
    logdet_ += std::log(one_minus);
  }
}

void ArWhitener::apply_in_place(Eigen::VectorXd& v) const {
  const Eigen::Index n = v.size();
  if (static_cast<std::size_t>(n) != r_.size() + 1)
    throw std::invalid_argument("ar: vector length mismatch");
  for (Eigen::Index k = n - 1; k >= 1; --k)
    v(k) = (v(k) - r_[static_cast<std::size_t>(k - 1)] * v(k - 1)) *
           inv_sd_[static_cast<std::size_t>(k - 1)];
}

Eigen::VectorXd ArWhitener::apply(const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = v;
  apply_in_place(out);
  return out;
}

void ArWhitener::apply_columns(Eigen::MatrixXd& m) const {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::VectorXd col = m.col(j);
    apply_in_place(col);
    m.col(j) = col;
  }
}

namespace {

// Unit-sigma row scalings for the heteroscedastic family.
Eigen::VectorXd variance_profile(const GlsArModel& model, double g1, double g2) {
  const auto n = model.X.rows();
  if (static_cast<Eigen::Index>(model.w.size()) != n)
    throw std::invalid_argument("gls_ar: heteroscedastic model needs w");
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double wi = model.w[static_cast<std::size_t>(i)];
    d(i) = std::exp(g1 * wi + g2 * wi * wi);
  }
  return d;
}

struct GlsSolve {
  Eigen::VectorXd beta;
  double q0 = 0.0;       // whitened residual sum of squares
  double logdet = 0.0;   // log|Omega| at unit sigma
  double log_d_sum = 0.0;
};

// Generalized least squares under the unit-sigma covariance Omega
// (AR correlation, optionally pre/post scaled by d).
GlsSolve gls_given(const GlsArModel& model, const Eigen::VectorXd& y,
                   double rho, const Eigen::VectorXd* d) {
  const ArWhitener wh(model.times, rho);
  Eigen::MatrixXd xw = model.X;
  Eigen::VectorXd yw = y;
  GlsSolve out;
  if (d) {
    for (Eigen::Index i = 0; i < yw.size(); ++i) {
      const double inv = 1.0 / (*d)(i);
      yw(i) *= inv;
      xw.row(i) *= inv;
      out.log_d_sum += std::log((*d)(i));
    }
  }
  wh.apply_columns(xw);
  wh.apply_in_place(yw);
  const auto qr = xw.colPivHouseholderQr();
  if (qr.rank() < xw.cols())
    throw numeric_error("gls_ar: design matrix is rank deficient");
  out.beta = qr.solve(yw);
  out.q0 = (yw - xw * out.beta).squaredNorm();
  out.logdet = wh.logdet();
  return out;
}

double loglik_at(const GlsArModel& model, const Eigen::VectorXd& y,
                 const Eigen::VectorXd& beta, double sigma, double rho,
                 double g1, double g2, double nu) {
  const auto n = static_cast<double>(y.size());
  const ArWhitener wh(model.times, rho);
  Eigen::VectorXd resid = y - model.X * beta;
  double log_d_sum = 0.0;
  if (model.family == ErrorFamily::kLogQuadVariance) {
    const Eigen::VectorXd d = variance_profile(model, g1, g2);
    for (Eigen::Index i = 0; i < resid.size(); ++i) {
      resid(i) /= d(i);
      log_d_sum += std::log(d(i));
    }
  }
  wh.apply_in_place(resid);
  const double q0 = resid.squaredNorm();

  if (model.family == ErrorFamily::kStudentT) {
    if (!(nu > 2.0)) throw std::invalid_argument("gls_ar: nu must exceed 2");
    return std::lgamma(0.5 * (nu + n)) - std::lgamma(0.5 * nu) -
           0.5 * n * std::log(nu * M_PI) - n * std::log(sigma) -
           0.5 * wh.logdet() -
           0.5 * (nu + n) * std::log1p(q0 / (sigma * sigma * nu));
  }
  return -n * std::log(sigma) - log_d_sum - 0.5 * wh.logdet() -
         0.5 * q0 / (sigma * sigma) - 0.5 * n * kLog2Pi;
}

int extra_dim(ErrorFamily family) {
  switch (family) {
    case ErrorFamily::kNormal: return 2;            // sigma, rho
    case ErrorFamily::kLogQuadVariance: return 4;   // sigma, rho, g1, g2
    case ErrorFamily::kStudentT: return 3;          // sigma, rho, nu
  }
  return 2;
}

std::vector<std::string> param_names_for(const GlsArModel& model) {
  std::vector<std::string> names;
  const auto p = model.X.cols();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (static_cast<Eigen::Index>(model.column_names.size()) == p)
      names.push_back(model.column_names[static_cast<std::size_t>(j)]);
    else
      names.push_back("beta" + std::to_string(j));
  }
  names.push_back("sigma");
  names.push_back("rho");
  if (model.family == ErrorFamily::kLogQuadVariance) {
    names.push_back("gamma1");
    names.push_back("gamma2");
  } else if (model.family == ErrorFamily::kStudentT) {
    names.push_back("nu");
  }
  return names;
}

void validate_fit_inputs(const GlsArModel& model, const Eigen::VectorXd& y) {
  if (model.X.rows() != y.size())
    throw std::invalid_argument("gls_ar: X/y size mismatch");
  if (static_cast<Eigen::Index>(model.times.size()) != y.size())
    throw std::invalid_argument("gls_ar: times/y size mismatch");
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (!std::isfinite(y(i)))
      throw std::invalid_argument("gls_ar: non-finite response");
  if (y.size() <= model.X.cols() + 2)
    throw std::invalid_argument("gls_ar: need n > p + 2");
}

// Moment autocorrelation of residuals over consecutive-year pairs.
double moment_rho(const std::vector<int>& times, const Eigen::VectorXd& resid) {
  double s2 = resid.squaredNorm() / static_cast<double>(resid.size());
  if (s2 <= 0.0) return 0.0;
  double acc = 0.0;
  int pairs = 0;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    if (times[k + 1] - times[k] != 1) continue;
    acc += resid(static_cast<Eigen::Index>(k)) *
           resid(static_cast<Eigen::Index>(k + 1));
    ++pairs;
  }
  if (pairs == 0) return 0.0;
  const double rho = acc / (static_cast<double>(resid.size()) * s2);
  return std::clamp(rho, -0.95, 0.95);
}

}  // namespace

double loglik(const GlsArModel& model, const GlsArParams& params,
              const Eigen::VectorXd& y) {
  if (model.X.rows() != y.size())
    throw std::invalid_argument("gls_ar: X/y size mismatch");
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (!std::isfinite(y(i)))
      throw std::invalid_argument("gls_ar: non-finite response");
  if (!(params.sigma > 0.0))
    throw std::invalid_argument("gls_ar: sigma must be positive");
  if (!(std::abs(params.rho) < 1.0))
    throw std::invalid_argument("gls_ar: |rho| >= 1 gives a singular A_rho");
  return loglik_at(model, y, params.beta, params.sigma, params.rho,
                   params.gamma1, params.gamma2, params.nu);
}

double aic(double loglik_max, int dim) { return 2.0 * loglik_max - 2.0 * dim; }

double aic(const GlsArFit& fit) { return aic(fit.loglik_max, fit.dim()); }

GlsArFit fit_ols(const GlsArModel& model, const Eigen::VectorXd& y) {
  validate_fit_inputs(model, y);
  const auto n = y.size();
  const auto p = model.X.cols();
  const auto qr = model.X.colPivHouseholderQr();
  if (qr.rank() < p) throw numeric_error("fit_ols: rank-deficient design");
  GlsArFit fit;
  fit.beta = qr.solve(y);
  const double rss = (y - model.X * fit.beta).squaredNorm();
  fit.rho = 0.0;
  fit.param_names.clear();
  for (Eigen::Index j = 0; j < p; ++j)
    fit.param_names.push_back(
        static_cast<Eigen::Index>(model.column_names.size()) == p
            ? model.column_names[static_cast<std::size_t>(j)]
            : "beta" + std::to_string(j));
  fit.param_names.push_back("sigma");

  const double scale = std::max(1.0, y.squaredNorm());
  if (rss <= 1e-24 * scale) {
    fit.sigma = 0.0;
    fit.degenerate = true;
    fit.converged = true;
    fit.loglik_max = std::numeric_limits<double>::infinity();
    fit.aic = std::numeric_limits<double>::infinity();
    return fit;
  }
  fit.sigma = std::sqrt(rss / static_cast<double>(n));  // ML divisor
  fit.loglik_max = -static_cast<double>(n) * std::log(fit.sigma) -
                   0.5 * static_cast<double>(n) -
                   0.5 * static_cast<double>(n) * kLog2Pi;
  fit.aic = aic(fit.loglik_max, static_cast<int>(p) + 1);
  fit.converged = true;

  // Observed information in closed form for iid normal errors.
  const Eigen::MatrixXd xtx = model.X.transpose() * model.X;
  fit.obs_info = Eigen::MatrixXd::Zero(p + 1, p + 1);
  fit.obs_info.topLeftCorner(p, p) = xtx / (fit.sigma * fit.sigma);
  fit.obs_info(p, p) = 2.0 * static_cast<double>(n) / (fit.sigma * fit.sigma);
  fit.se.resize(p + 1);
  const Eigen::MatrixXd cov =
      xtx.ldlt().solve(Eigen::MatrixXd::Identity(p, p)) * fit.sigma * fit.sigma;
  for (Eigen::Index j = 0; j < p; ++j) fit.se(j) = std::sqrt(cov(j, j));
  fit.se(p) = fit.sigma / std::sqrt(2.0 * static_cast<double>(n));
  return fit;
}

namespace {

// Transformed outer parameter vector: (log sigma, atanh rho, extras).
struct OuterCoding {
  ErrorFamily family;
  int size() const { return extra_dim(family); }

  void decode(const Eigen::VectorXd& z, double* sigma, double* rho, double* g1,
              double* g2, double* nu) const {
    *sigma = std::exp(z(0));
    *rho = std::tanh(z(1));
    *g1 = *g2 = 0.0;
    *nu = 10.0;
    if (family == ErrorFamily::kLogQuadVariance) {
      *g1 = z(2);
      *g2 = z(3);
    } else if (family == ErrorFamily::kStudentT) {
      // On effectively Gaussian data the t likelihood increases toward
      // nu = infinity; the cap keeps the fit off that flat boundary.
      *nu = 2.0 + std::exp(std::min(z(2), 6.9));
    }
  }
};

// Negative log-likelihood at z with beta profiled out by GLS.
double neg_profile_loglik(const GlsArModel& model, const Eigen::VectorXd& y,
                          const OuterCoding& coding, const Eigen::VectorXd& z,
                          Eigen::VectorXd* beta_out = nullptr) {
  double sigma, rho, g1, g2, nu;
  coding.decode(z, &sigma, &rho, &g1, &g2, &nu);
  if (!std::isfinite(sigma) || !std::isfinite(rho))
    return std::numeric_limits<double>::infinity();
  try {
    Eigen::VectorXd d;
    const Eigen::VectorXd* dp = nullptr;
    if (model.family == ErrorFamily::kLogQuadVariance) {
      d = variance_profile(model, g1, g2);
      dp = &d;
    }
    const GlsSolve gls = gls_given(model, y, rho, dp);
    if (beta_out) *beta_out = gls.beta;
    const double n = static_cast<double>(y.size());
    double ll;
    if (model.family == ErrorFamily::kStudentT) {
      ll = std::lgamma(0.5 * (nu + n)) - std::lgamma(0.5 * nu) -
           0.5 * n * std::log(nu * M_PI) - n * std::log(sigma) -
           0.5 * gls.logdet -
           0.5 * (nu + n) * std::log1p(gls.q0 / (sigma * sigma * nu));
    } else {
      ll = -n * std::log(sigma) - gls.log_d_sum - 0.5 * gls.logdet -
           0.5 * gls.q0 / (sigma * sigma) - 0.5 * n * kLog2Pi;
    }
    return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
  } catch (const numeric_error&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Full-likelihood coordinates for the observed information: beta on the
// natural scale, variance/correlation parameters transformed.
Eigen::MatrixXd observed_information(const GlsArModel& model,
                                     const Eigen::VectorXd& y,
                                     const GlsArFit& fit, bool* pd_ok) {
  const auto p = model.X.cols();
  const OuterCoding coding{model.family};
  const int d = static_cast<int>(p) + coding.size();
  Eigen::VectorXd z0(d);
  z0.head(p) = fit.beta;
  z0(p) = std::log(fit.sigma);
  z0(p + 1) = std::atanh(std::clamp(fit.rho, -0.999999, 0.999999));
  if (model.family == ErrorFamily::kLogQuadVariance) {
    z0(p + 2) = fit.gamma->first;
    z0(p + 3) = fit.gamma->second;
  } else if (model.family == ErrorFamily::kStudentT) {
    z0(p + 2) = std::log(*fit.nu - 2.0);
  }
  const auto full_nll = [&](const Eigen::VectorXd& z) {
    double sigma, rho, g1, g2, nu;
    coding.decode(z.tail(coding.size()), &sigma, &rho, &g1, &g2, &nu);
    const Eigen::VectorXd beta = z.head(p);
    const double ll = loglik_at(model, y, beta, sigma, rho, g1, g2, nu);
    return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
  };

  // Central finite-difference Hessian, step 1e-4 on the working scale.
  const double h = 1e-4;
  Eigen::MatrixXd hess(d, d);
  const double f0 = full_nll(z0);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      Eigen::VectorXd zpp = z0, zpm = z0, zmp = z0, zmm = z0;
      if (i == j) {
        zpp(i) += h;
        zmm(i) -= h;
        hess(i, i) = (full_nll(zpp) - 2.0 * f0 + full_nll(zmm)) / (h * h);
      } else {
        zpp(i) += h; zpp(j) += h;
        zpm(i) += h; zpm(j) -= h;
        zmp(i) -= h; zmp(j) += h;
        zmm(i) -= h; zmm(j) -= h;
        hess(i, j) = hess(j, i) =
            (full_nll(zpp) - full_nll(zpm) - full_nll(zmp) + full_nll(zmm)) /
            (4.0 * h * h);
      }
    }
  }
  // Chain rule back to the natural scale (diagonal Jacobian; the gradient
  // term vanishes at the optimum).
  Eigen::VectorXd jac = Eigen::VectorXd::Ones(d);
  jac(p) = 1.0 / fit.sigma;
  jac(p + 1) = 1.0 / (1.0 - fit.rho * fit.rho);
  if (model.family == ErrorFamily::kStudentT) jac(p + 2) = 1.0 / (*fit.nu - 2.0);
  Eigen::MatrixXd info = hess;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) info(i, j) *= jac(i) * jac(j);

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(info);
  *pd_ok = es.eigenvalues().minCoeff() > 0.0;
  return info;
}

}  // namespace

GlsArFit fit_mle(const GlsArModel& model, const Eigen::VectorXd& y,
                 const FitOptions& options) {
  validate_fit_inputs(model, y);
  const auto p = model.X.cols();
  const OuterCoding coding{model.family};

  // Start from OLS; a zero-residual fit short-circuits as degenerate.
  GlsArFit ols = fit_ols(model, y);
  if (ols.degenerate) {
    GlsArFit fit;
    fit.param_names = param_names_for(model);
    fit.beta = ols.beta;
    fit.sigma = 0.0;
    fit.degenerate = true;
    fit.converged = true;
    fit.loglik_max = std::numeric_limits<double>::infinity();
    fit.aic = std::numeric_limits<double>::infinity();
    return fit;
  }
  const Eigen::VectorXd resid0 = y - model.X * ols.beta;
  const double rho0 = moment_rho(model.times, resid0);

  Eigen::VectorXd z0(coding.size());
  z0(0) = std::log(ols.sigma);
  z0(1) = std::atanh(rho0);
  if (model.family == ErrorFamily::kLogQuadVariance) {
    z0(2) = 0.0;
    z0(3) = 0.0;
  } else if (model.family == ErrorFamily::kStudentT) {
    z0(2) = std::log(8.0);  // nu = 10
  }

  const auto objective = [&](const Eigen::VectorXd& z) {
    return neg_profile_loglik(model, y, coding, z);
  };

  Rng jitter_rng = seeded_rng(0x51ab5eedull, 7);
  std::normal_distribution<double> jitter(0.0, 0.5);
  Eigen::VectorXd best_z;
  double best_f = std::numeric_limits<double>::infinity();
  bool ok = false;
  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    Eigen::VectorXd start = z0;
    if (attempt > 0)
      for (int i = 0; i < start.size(); ++i) start(i) += jitter(jitter_rng);
    OptimResult simplex = nelder_mead(objective, start, 0.3);
    OptimResult polish = bfgs_polish(objective, simplex.x, options.grad_tol);
    const Eigen::VectorXd grad = fd_gradient(objective, polish.x, 1e-5);
    if (polish.f < best_f) {
      best_f = polish.f;
      best_z = polish.x;
    }
    // Stationarity relative to the log-likelihood magnitude; the absolute
    // gradient cannot be resolved below |l| * machine precision / fd step.
    const double tol = options.grad_tol * std::max(1.0, std::abs(polish.f));
    if (grad.lpNorm<Eigen::Infinity>() <= tol) {
      ok = true;
      if (polish.f <= best_f) {
        best_f = polish.f;
        best_z = polish.x;
      }
      break;
    }
  }
  if (!ok)
    throw numeric_error("fit_mle: optimizer failed to reach the gradient "
                        "tolerance after retries");

  GlsArFit fit;
  fit.param_names = param_names_for(model);
  double sigma, rho, g1, g2, nu;
  coding.decode(best_z, &sigma, &rho, &g1, &g2, &nu);
  Eigen::VectorXd beta;
  neg_profile_loglik(model, y, coding, best_z, &beta);
  fit.beta = beta;
  fit.sigma = sigma;
  fit.rho = rho;
  if (model.family == ErrorFamily::kLogQuadVariance) fit.gamma = {{g1, g2}};
  if (model.family == ErrorFamily::kStudentT) fit.nu = nu;
  fit.loglik_max = -best_f;
  fit.aic = aic(fit.loglik_max, static_cast<int>(p) + coding.size());
  fit.converged = true;
  fit.boundary_rho = std::abs(rho) > options.rho_boundary;

  if (options.compute_obs_info) {
    bool pd = true;
    fit.obs_info = observed_information(model, y, fit, &pd);
    fit.info_pd = pd;
    const int d = static_cast<int>(fit.obs_info.rows());
    fit.se = Eigen::VectorXd::Constant(d, std::numeric_limits<double>::quiet_NaN());
    if (pd) {
      const Eigen::MatrixXd cov =
          fit.obs_info.ldlt().solve(Eigen::MatrixXd::Identity(d, d));
      for (int i = 0; i < d; ++i) fit.se(i) = std::sqrt(cov(i, i));
    }
  }
  return fit;
}

GlsArFit fit_lagged(const LaggedDesign& design, const FitOptions& options) {
  GlsArModel model;
  model.X = design.X;
  model.column_names = {"beta0", "beta1", "beta2"};
  model.times = design.years;
  model.family = ErrorFamily::kNormal;
  return fit_mle(model, design.y, options);
}

double profile_loglik_given_rho(const GlsArModel& model,
                                const Eigen::VectorXd& y, double rho) {
  if (!(std::abs(rho) < 1.0))
    throw std::invalid_argument("profile: |rho| >= 1");
  if (model.family == ErrorFamily::kNormal) {
    const GlsSolve gls = gls_given(model, y, rho, nullptr);
    const double n = static_cast<double>(y.size());
    if (gls.q0 <= 0.0)
      throw numeric_error("profile: zero residual variance");
    const double sigma2 = gls.q0 / n;
    return -0.5 * n * std::log(sigma2) - 0.5 * gls.logdet - 0.5 * n -
           0.5 * n * kLog2Pi;
  }
  // Inner optimization over the remaining transformed parameters.
  const OuterCoding coding{model.family};
  const int d = coding.size() - 1;  // atanh rho is pinned
  const double zr = std::atanh(rho);
  const auto inner = [&](const Eigen::VectorXd& zi) {
    Eigen::VectorXd z(coding.size());
    z(0) = zi(0);
    z(1) = zr;
    for (int i = 1; i < d; ++i) z(i + 1) = zi(i);
    return neg_profile_loglik(model, y, coding, z);
  };
  GlsArFit ols = fit_ols(model, y);
  Eigen::VectorXd zi0 = Eigen::VectorXd::Zero(d);
  zi0(0) = std::log(std::max(ols.sigma, 1e-8));
  if (model.family == ErrorFamily::kStudentT && d >= 2) zi0(1) = std::log(8.0);
  OptimResult simplex = nelder_mead(inner, zi0, 0.3);
  OptimResult polish = bfgs_polish(inner, simplex.x, 1e-7);
  return -std::min(simplex.f, polish.f);
}

ProfileRhoFit fit_profile_rho(const Eigen::MatrixXd& X,
                              const Eigen::VectorXd& y,
                              const std::vector<int>& times, double rho_lo,
                              double rho_hi) {
  GlsArModel model;
  model.X = X;
  model.times = times;
  const auto neg_prof = [&](double rho) {
    const GlsSolve gls = gls_given(model, y, rho, nullptr);
    const double n = static_cast<double>(y.size());
    if (gls.q0 <= 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 * n * std::log(gls.q0 / n) + 0.5 * gls.logdet + 0.5 * n +
           0.5 * n * kLog2Pi;
  };
  // Coarse scan, then Brent on the best bracket; the profile is smooth but
  // not guaranteed unimodal.
  const int coarse = 9;
  double best_rho = 0.0, best_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i < coarse; ++i) {
    const double rho =
        rho_lo + (rho_hi - rho_lo) * (static_cast<double>(i) + 0.5) / coarse;
    const double f = neg_prof(rho);
    if (f < best_f) {
      best_f = f;
      best_rho = rho;
    }
  }
  const double span = (rho_hi - rho_lo) / coarse;
  double fmin = 0.0;
  const double rho = brent_minimize(neg_prof, std::max(rho_lo, best_rho - span),
                                    std::min(rho_hi, best_rho + span), 1e-9,
                                    200, &fmin);
  ProfileRhoFit out;
  out.rho = rho;
  const GlsSolve gls = gls_given(model, y, rho, nullptr);
  out.beta = gls.beta;
  out.sigma = std::sqrt(gls.q0 / static_cast<double>(y.size()));
  out.loglik = -fmin;
  out.boundary = (rho - rho_lo < 1e-4) || (rho_hi - rho < 1e-4);
  return out;
}

GlsArModel trend_model(const GappedSeries& series, double x_origin,
                       ErrorFamily family) {
  const auto n = static_cast<Eigen::Index>(series.size());
  GlsArModel model;
  model.X.resize(n, 2);
  std::vector<double> x(series.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi =
        static_cast<double>(series.times[static_cast<std::size_t>(i)]) -
        x_origin;
    model.X(i, 0) = 1.0;
    model.X(i, 1) = xi;
    x[static_cast<std::size_t>(i)] = xi;
  }
  model.column_names = {"intercept", "slope"};
  model.times = series.times;
  model.family = family;
  if (family == ErrorFamily::kLogQuadVariance) model.w = center(x).w;
  return model;
}

}  // namespace ccstat

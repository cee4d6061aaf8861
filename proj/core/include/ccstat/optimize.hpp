#pragma once

#include <Eigen/Core>
#include <functional>

namespace ccstat {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;
using ScalarFn = std::function<double(double)>;

struct OptimResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Derivative-free Nelder-Mead simplex minimization.  `step` sets the
// initial simplex edge length per coordinate.
OptimResult nelder_mead(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                        double step = 0.25, int max_iter = 4000,
                        double f_tol = 1e-12, double x_tol = 1e-10);

// Central-difference gradient, step h per coordinate.
Eigen::VectorXd fd_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x,
                            double h = 1e-5);

// Quasi-Newton (BFGS) polish with finite-difference gradients and Armijo
// backtracking.  Converged when the sup-norm gradient drops below grad_tol.
OptimResult bfgs_polish(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                        double grad_tol = 1e-7, int max_iter = 300,
                        double grad_step = 1e-5);

// Brent minimization of a univariate function on [a, b].
double brent_minimize(const ScalarFn& f, double a, double b,
                      double tol = 1e-10, int max_iter = 200,
                      double* f_at_min = nullptr);

// Golden-section refinement on a bracket [a, b].
double golden_section_minimize(const ScalarFn& f, double a, double b,
                               double tol = 1e-10, int max_iter = 400,
                               double* f_at_min = nullptr);

// Evaluates f at n_starts points across [lo, hi], then refines around the
// best one by golden section.  Used for 1-d profiles that may be multimodal.
double multistart_minimize_1d(const ScalarFn& f, double lo, double hi,
                              int n_starts = 20, double tol = 1e-10,
                              double* f_at_min = nullptr);

}  // namespace ccstat

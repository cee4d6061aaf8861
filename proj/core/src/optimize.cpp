#include "ccstat/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace ccstat {

OptimResult nelder_mead(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                        double step, int max_iter, double f_tol,
                        double x_tol) {
  const int d = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> pts(d + 1, x0);
  std::vector<double> vals(d + 1);
  for (int i = 0; i < d; ++i) pts[i + 1](i) += step;
  for (int i = 0; i <= d; ++i) vals[i] = f(pts[i]);

  std::vector<int> order(d + 1);
  OptimResult res;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order[0], worst = order[d], second = order[d - 1];

    double spread = 0.0;
    for (int i = 0; i <= d; ++i)
      spread = std::max(spread, (pts[i] - pts[best]).lpNorm<Eigen::Infinity>());
    if (std::abs(vals[worst] - vals[best]) < f_tol && spread < x_tol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int i = 0; i <= d; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= d;

    const Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
    const double f_refl = f(refl);
    if (f_refl < vals[best]) {
      const Eigen::VectorXd exp_pt = centroid + 2.0 * (centroid - pts[worst]);
      const double f_exp = f(exp_pt);
      if (f_exp < f_refl) {
        pts[worst] = exp_pt;
        vals[worst] = f_exp;
      } else {
        pts[worst] = refl;
        vals[worst] = f_refl;
      }
    } else if (f_refl < vals[second]) {
      pts[worst] = refl;
      vals[worst] = f_refl;
    } else {
      const Eigen::VectorXd contr =
          centroid + 0.5 * ((f_refl < vals[worst] ? refl : pts[worst]) - centroid);
      const double f_contr = f(contr);
      if (f_contr < std::min(f_refl, vals[worst])) {
        pts[worst] = contr;
        vals[worst] = f_contr;
      } else {
        for (int i = 0; i <= d; ++i) {
          if (i == best) continue;
          pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  res.x = pts[static_cast<std::size_t>(it - vals.begin())];
  res.f = *it;
  res.iterations = iter;
  res.converged = iter < max_iter;
  return res;
}

Eigen::VectorXd fd_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x,
                            double h) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd p = x;
  for (int i = 0; i < x.size(); ++i) {
    const double xi = x(i);
    p(i) = xi + h;
    const double fp = f(p);
    p(i) = xi - h;
    const double fm = f(p);
    p(i) = xi;
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

OptimResult bfgs_polish(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                        double grad_tol, int max_iter, double grad_step) {
  const int d = static_cast<int>(x0.size());
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd x = x0;
  double fx = f(x);
  Eigen::VectorXd g = fd_gradient(f, x, grad_step);

  OptimResult res;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    if (g.lpNorm<Eigen::Infinity>() < grad_tol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd dir = -(h_inv * g);
    if (dir.dot(g) >= 0.0) {  // not a descent direction; reset
      h_inv.setIdentity();
      dir = -g;
    }
    double alpha = 1.0;
    const double slope = g.dot(dir);
    double f_new = fx;
    Eigen::VectorXd x_new = x;
    bool stepped = false;
    for (int ls = 0; ls < 40; ++ls) {
      x_new = x + alpha * dir;
      f_new = f(x_new);
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * alpha * slope) {
        stepped = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!stepped) break;  // no further progress along any step size

    const Eigen::VectorXd g_new = fd_gradient(f, x_new, grad_step);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd yv = g_new - g;
    const double sy = s.dot(yv);
    if (sy > 1e-12) {
      const Eigen::VectorXd hy = h_inv * yv;
      const double yhy = yv.dot(hy);
      h_inv += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) -
               (hy * s.transpose() + s * hy.transpose()) / sy;
    }
    x = x_new;
    fx = f_new;
    g = g_new;
  }
  res.x = x;
  res.f = fx;
  res.iterations = iter;
  if (g.lpNorm<Eigen::Infinity>() < grad_tol) res.converged = true;
  return res;
}

double brent_minimize(const ScalarFn& f, double a, double b, double tol,
                      int max_iter, double* f_at_min) {
  const double gold = 0.3819660112501051;
  double x = a + gold * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = tol * std::abs(x) + 1e-12;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    bool parabolic = false;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_old = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (xm > x ? tol1 : -tol1);
        parabolic = true;
      }
    }
    if (!parabolic) {
      e = (x >= xm ? a - x : b - x);
      d = gold * e;
    }
    const double u = (std::abs(d) >= tol1 ? x + d : x + (d > 0 ? tol1 : -tol1));
    const double fu = f(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  if (f_at_min) *f_at_min = fx;
  return x;
}

double golden_section_minimize(const ScalarFn& f, double a, double b,
                               double tol, int max_iter, double* f_at_min) {
  const double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < max_iter && (b - a) > tol * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1; f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2; f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = (f1 <= f2 ? x1 : x2);
  if (f_at_min) *f_at_min = std::min(f1, f2);
  return xm;
}

double multistart_minimize_1d(const ScalarFn& f, double lo, double hi,
                              int n_starts, double tol, double* f_at_min) {
  n_starts = std::max(n_starts, 3);
  double best_x = lo, best_f = std::numeric_limits<double>::infinity();
  std::vector<double> xs(n_starts), fs(n_starts);
  for (int i = 0; i < n_starts; ++i) {
    xs[i] = lo + (hi - lo) * (static_cast<double>(i) + 0.5) / n_starts;
    fs[i] = f(xs[i]);
  }
  for (int i = 0; i < n_starts; ++i) {
    if (!(std::isfinite(fs[i]))) continue;
    // refine only local minima of the coarse scan (plus global edges)
    const bool left_ok = (i == 0) || !(fs[i - 1] < fs[i]);
    const bool right_ok = (i == n_starts - 1) || !(fs[i + 1] < fs[i]);
    if (!(left_ok && right_ok)) continue;
    const double a = (i == 0) ? lo : xs[i - 1];
    const double b = (i == n_starts - 1) ? hi : xs[i + 1];
    double fv = 0.0;
    const double xv = golden_section_minimize(f, a, b, tol, 400, &fv);
    if (fv < best_f) {
      best_f = fv;
      best_x = xv;
    }
  }
  if (!std::isfinite(best_f)) {
    // no finite value anywhere on the scan
    if (f_at_min) *f_at_min = best_f;
    return 0.5 * (lo + hi);
  }
  if (f_at_min) *f_at_min = best_f;
  return best_x;
}

}  // namespace ccstat

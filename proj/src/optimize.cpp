#include "swg/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace swg {

OptimResult nelder_mead(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                        const NelderMeadOptions& opts) {
  const int n = static_cast<int>(x0.size());
  OptimResult res;
  res.algorithm = "nelder-mead";
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    double v = f(x);
    return std::isfinite(v) ? v : -1e300;
  };

  std::vector<Eigen::VectorXd> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 1; i <= n; ++i) pts[i](i - 1) += opts.initial_step;
  for (int i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<int> order(n + 1);
  while (evals < opts.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    // maximization: best = largest value
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return vals[a] > vals[b]; });
    int best = order[0], worst = order[n], second_worst = order[n - 1];
    if (vals[best] - vals[worst] < opts.f_tol * (std::fabs(vals[best]) + 1.0)) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
    double f_refl = eval(refl);
    if (f_refl > vals[best]) {
      Eigen::VectorXd expand = centroid + 2.0 * (centroid - pts[worst]);
      double f_exp = eval(expand);
      if (f_exp > f_refl) {
        pts[worst] = expand;
        vals[worst] = f_exp;
      } else {
        pts[worst] = refl;
        vals[worst] = f_refl;
      }
    } else if (f_refl > vals[second_worst]) {
      pts[worst] = refl;
      vals[worst] = f_refl;
    } else {
      Eigen::VectorXd contr = centroid + 0.5 * (pts[worst] - centroid);
      double f_con = eval(contr);
      if (f_con > vals[worst]) {
        pts[worst] = contr;
        vals[worst] = f_con;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
          vals[i] = eval(pts[i]);
        }
      }
    }
  }
  int best = static_cast<int>(
      std::max_element(vals.begin(), vals.end()) - vals.begin());
  res.x = pts[best];
  res.value = vals[best];
  res.evaluations = evals;
  return res;
}

Eigen::VectorXd fd_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x,
                            double step) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double h = step * (std::fabs(x(i)) + 1.0);
    xp(i) = x(i) + h;
    double fp = f(xp);
    xp(i) = x(i) - h;
    double fm = f(xp);
    xp(i) = x(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const ObjectiveFn& f, const Eigen::VectorXd& x,
                           double step) {
  Eigen::Index n = x.size();
  Eigen::MatrixXd h(n, n);
  Eigen::VectorXd xp = x;
  double f0 = f(x);
  std::vector<double> hs(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    hs[static_cast<std::size_t>(i)] = step * (std::fabs(x(i)) + 1.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    double hi = hs[static_cast<std::size_t>(i)];
    xp(i) = x(i) + hi;
    double fp = f(xp);
    xp(i) = x(i) - hi;
    double fm = f(xp);
    xp(i) = x(i);
    h(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double hj = hs[static_cast<std::size_t>(j)];
      xp(i) = x(i) + hi; xp(j) = x(j) + hj;
      double fpp = f(xp);
      xp(j) = x(j) - hj;
      double fpm = f(xp);
      xp(i) = x(i) - hi; xp(j) = x(j) + hj;
      double fmp = f(xp);
      xp(j) = x(j) - hj;
      double fmm = f(xp);
      xp(i) = x(i); xp(j) = x(j);
      h(i, j) = h(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
    }
  }
  return h;
}

OptimResult bfgs(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                 const BfgsOptions& opts) {
  OptimResult res;
  res.algorithm = "bfgs";
  Eigen::Index n = x0.size();
  Eigen::VectorXd x = x0;
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& p) {
    ++evals;
    double v = f(p);
    return std::isfinite(v) ? v : -1e300;
  };
  double fx = eval(x);
  Eigen::VectorXd g = fd_gradient([&](const Eigen::VectorXd& p) { return eval(p); },
                                  x, opts.grad_step);
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    if (g.cwiseAbs().maxCoeff() < opts.g_tol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd dir = h_inv * g;  // ascent direction
    if (dir.dot(g) <= 0.0) {
      h_inv = Eigen::MatrixXd::Identity(n, n);
      dir = g;
    }
    double step = 1.0;
    double slope = dir.dot(g);
    Eigen::VectorXd x_new;
    double f_new = fx;
    bool improved = false;
    for (int ls = 0; ls < 40; ++ls) {
      x_new = x + step * dir;
      f_new = eval(x_new);
      if (f_new > fx + 1e-4 * step * slope) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      res.converged = true;  // no ascent direction left at line-search floor
      break;
    }
    Eigen::VectorXd g_new = fd_gradient(
        [&](const Eigen::VectorXd& p) { return eval(p); }, x_new, opts.grad_step);
    Eigen::VectorXd sk = x_new - x;
    Eigen::VectorXd yk = g_new - g;  // gradient change (ascent convention)
    double sy = sk.dot(yk);
    // curvature condition for the negated (minimization) problem: sy < 0
    if (sy < -1e-12) {
      Eigen::VectorXd hy = h_inv * yk;
      double yhy = yk.dot(hy);
      h_inv += ((yhy - sy) / (sy * sy)) * (sk * sk.transpose()) -
               (hy * sk.transpose() + sk * hy.transpose()) / sy;
    }
    x = x_new;
    fx = f_new;
    g = g_new;
  }
  res.x = x;
  res.value = fx;
  res.evaluations = evals;
  return res;
}

}  // namespace swg

#include "swg/fit.hpp"

#include <algorithm>
#include <cmath>

#include "swg/optimize.hpp"

namespace swg {

namespace {

constexpr double kB1Floor = 1e-8;
// soft bound on the skewness coordinate; past ~a few hundred the likelihood
// is flat in alpha (half-t limit) and an unbounded coordinate can drift
// arbitrarily far along the ridge
constexpr double kAlphaCap = 500.0;

struct Transform {
  double phi_bound;  // 1/(N * max d)
  bool with_alpha;

  int dim() const { return with_alpha ? 5 : 4; }

  ModelParams natural(const Eigen::VectorXd& x, double nu, bool gaussian) const {
    ModelParams p;
    double c = 1.0 / (1.0 + std::exp(-x(0)));
    p.rho = std::exp(x(1));
    p.phi = c * p.rho * phi_bound;
    p.b0 = std::exp(x(2));
    p.b1 = std::max(std::exp(x(3)) - kB1Floor, 0.0);
    p.alpha = with_alpha ? kAlphaCap * std::tanh(x(4) / kAlphaCap) : 0.0;
    p.nu = nu;
    p.gaussian = gaussian;
    return p;
  }

  Eigen::VectorXd encode(double c, double rho, double b0, double b1,
                         double alpha) const {
    Eigen::VectorXd x(dim());
    x(0) = std::log(c / (1.0 - c));
    x(1) = std::log(rho);
    x(2) = std::log(b0);
    x(3) = std::log(b1 + kB1Floor);
    if (with_alpha) x(4) = kAlphaCap * std::atanh(alpha / kAlphaCap);
    return x;
  }

  // Jacobian of (phi, rho, b0, b1[, alpha]) w.r.t. transformed coordinates
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    int n = dim();
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    double c = 1.0 / (1.0 + std::exp(-x(0)));
    double rho = std::exp(x(1));
    j(0, 0) = c * (1.0 - c) * rho * phi_bound;  // dphi/dx0
    j(0, 1) = c * rho * phi_bound;              // dphi/dx1
    j(1, 1) = rho;
    j(2, 2) = std::exp(x(2));
    j(3, 3) = std::exp(x(3));
    if (with_alpha) {
      double th = std::tanh(x(4) / kAlphaCap);
      j(4, 4) = 1.0 - th * th;
    }
    return j;
  }
};

std::vector<Eigen::VectorXd> starting_points(const PrecipPanel& panel,
                                             const GaugeNetwork& net,
                                             const Transform& tr, int n_starts) {
  // b0 scale from the positive values' spread
  std::vector<double> pos;
  for (Eigen::Index t = 0; t < panel.values.rows(); ++t)
    for (Eigen::Index s = 0; s < panel.values.cols(); ++s)
      if (panel.values(t, s) > 0.0) pos.push_back(panel.values(t, s));
  double b0_scale = 0.5;
  if (pos.size() >= 2) {
    double mean = 0.0;
    for (double v : pos) mean += v;
    mean /= static_cast<double>(pos.size());
    double var = 0.0;
    for (double v : pos) var += (v - mean) * (v - mean);
    b0_scale = std::sqrt(var / static_cast<double>(pos.size() - 1));
    if (!(b0_scale > 0.0)) b0_scale = 0.5;
  }
  std::vector<double> dists;
  for (Eigen::Index i = 0; i < net.dist.rows(); ++i)
    for (Eigen::Index j = i + 1; j < net.dist.cols(); ++j)
      dists.push_back(net.dist(i, j));
  std::sort(dists.begin(), dists.end());
  double rho_med = dists[dists.size() / 2];
  double rho_max = dists.back();
  if (!(rho_med > 0.0)) rho_med = rho_max;

  // dispersed corners of the spec'd start grid, opposite corners first
  struct Start { double c, rho, b1_frac, alpha; };
  std::vector<Start> grid = {
      {0.25, rho_med, 0.0, 0.0}, {0.75, rho_max, 0.5, 2.0},
      {0.25, rho_max, 0.5, 0.0}, {0.75, rho_med, 0.0, 2.0},
      {0.25, rho_med, 0.5, 2.0}, {0.75, rho_max, 0.0, 0.0},
      {0.25, rho_max, 0.0, 2.0}, {0.75, rho_med, 0.5, 0.0}};
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < n_starts; ++i) {
    const Start& s = grid[static_cast<std::size_t>(i) % grid.size()];
    out.push_back(tr.encode(s.c, s.rho, b0_scale, s.b1_frac * b0_scale, s.alpha));
  }
  return out;
}

}  // namespace

FitResult fit(const PrecipPanel& panel, const GaugeNetwork& net,
              const CutoffField& cutoffs, const FitOptions& options) {
  if (options.n_starts < 1) throw ConfigError("fit: n_starts must be >= 1");
  for (double nu : options.nu_grid)
    if (!(nu > 2.0) && !options.gaussian_baseline)
      throw ConfigError("fit: nu_grid entries must exceed 2");

  Transform tr;
  tr.phi_bound = 1.0 / (static_cast<double>(net.N()) * net.max_distance());
  tr.with_alpha = !options.gaussian_baseline;

  FitResult result;
  std::vector<double> grid = options.gaussian_baseline
                                 ? std::vector<double>{0.0}
                                 : options.nu_grid;
  auto starts = starting_points(panel, net, tr, options.n_starts);

  for (double nu : grid) {
    bool gaussian = options.gaussian_baseline;
    auto objective = [&](const Eigen::VectorXd& x) {
      ModelParams p = tr.natural(x, nu, gaussian);
      try {
        return gaussian ? gaussian_loglik(panel, net, cutoffs, p)
                        : loglik(panel, net, cutoffs, p);
      } catch (const std::exception&) {
        return kLoglikFloor;
      }
    };

    // screen all starts cheaply, then polish the winner
    NelderMeadOptions coarse;
    coarse.max_evals = options.coarse_evals;
    coarse.f_tol = 1e-6;
    OptimResult best_screen;
    best_screen.value = -std::numeric_limits<double>::infinity();
    for (const auto& x0 : starts) {
      OptimResult r = nelder_mead(objective, x0, coarse);
      result.trace.push_back("nu=" + std::to_string(nu) + " screen value=" +
                             std::to_string(r.value));
      if (r.value > best_screen.value) best_screen = r;
    }

    NelderMeadOptions fine;
    fine.max_evals = options.full_evals;
    fine.initial_step = 0.1;
    OptimResult nm = nelder_mead(objective, best_screen.x, fine);
    BfgsOptions bopt;
    bopt.max_iters = 60;
    OptimResult gb = bfgs(objective, nm.x, bopt);
    OptimResult win = (gb.converged && gb.value >= nm.value) ? gb : nm;
    if (!win.converged)
      win.converged = nm.converged || gb.converged;

    NuProfileEntry entry;
    entry.nu = nu;
    entry.gaussian = gaussian;
    entry.loglik = win.value;
    entry.theta = tr.natural(win.x, nu, gaussian);
    entry.algorithm = win.algorithm;
    entry.converged = win.converged;
    result.nu_profile.push_back(entry);
    result.trace.push_back("nu=" + std::to_string(nu) + " final " +
                           win.algorithm + " value=" + std::to_string(win.value) +
                           (win.converged ? " (converged)" : " (not converged)"));
  }

  auto best = std::max_element(
      result.nu_profile.begin(), result.nu_profile.end(),
      [](const NuProfileEntry& a, const NuProfileEntry& b) {
        if (a.converged != b.converged) return !a.converged && b.converged;
        return a.loglik < b.loglik;
      });
  if (best == result.nu_profile.end() || !best->converged)
    throw FittingError("fit: no nu branch converged");
  result.theta_hat = best->theta;
  result.loglik = best->loglik;
  // report b1 pinned to the boundary as exactly zero
  if (result.theta_hat.b1 < 1e-6) result.theta_hat.b1 = 0.0;

  if (options.compute_ci) {
    double nu_hat = result.theta_hat.nu;
    bool gaussian = result.theta_hat.gaussian;
    auto objective = [&](const Eigen::VectorXd& x) {
      ModelParams p = tr.natural(x, nu_hat, gaussian);
      try {
        return gaussian ? gaussian_loglik(panel, net, cutoffs, p)
                        : loglik(panel, net, cutoffs, p);
      } catch (const std::exception&) {
        return kLoglikFloor;
      }
    };
    double c_hat = result.theta_hat.phi / (result.theta_hat.rho * tr.phi_bound);
    Eigen::VectorXd x_hat =
        tr.encode(std::clamp(c_hat, 1e-8, 1.0 - 1e-8), result.theta_hat.rho,
                  result.theta_hat.b0, result.theta_hat.b1,
                  result.theta_hat.alpha);
    Eigen::MatrixXd hess = fd_hessian(objective, x_hat);
    Eigen::LLT<Eigen::MatrixXd> llt(-hess);
    if (llt.info() == Eigen::Success) {
      Eigen::MatrixXd cov_x =
          llt.solve(Eigen::MatrixXd::Identity(hess.rows(), hess.cols()));
      Eigen::MatrixXd j = tr.jacobian(x_hat);
      Eigen::MatrixXd cov = j * cov_x * j.transpose();
      const char* names[] = {"phi", "rho", "b0", "b1", "alpha"};
      double est[] = {result.theta_hat.phi, result.theta_hat.rho,
                      result.theta_hat.b0, result.theta_hat.b1,
                      result.theta_hat.alpha};
      for (int i = 0; i < tr.dim(); ++i) {
        double se = std::sqrt(std::max(cov(i, i), 0.0));
        result.ci95[names[i]] = {est[i] - 1.96 * se, est[i] + 1.96 * se};
      }
      result.ci_available = true;
    } else {
      result.trace.push_back("hessian not negative-definite; CIs unavailable");
    }
  }
  return result;
}

}  // namespace swg

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace swg {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;  // maximized

struct OptimResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
  std::string algorithm;
};

struct NelderMeadOptions {
  double initial_step = 0.5;
  double f_tol = 1e-9;
  int max_evals = 4000;
};

OptimResult nelder_mead(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                        const NelderMeadOptions& opts = {});

struct BfgsOptions {
  double grad_step = 1e-5;  // central-difference step
  double g_tol = 1e-7;
  int max_iters = 200;
};

// BFGS with finite-difference gradients and backtracking line search
OptimResult bfgs(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                 const BfgsOptions& opts = {});

Eigen::VectorXd fd_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x,
                            double step = 1e-5);
Eigen::MatrixXd fd_hessian(const ObjectiveFn& f, const Eigen::VectorXd& x,
                           double step = 1e-4);

}  // namespace swg

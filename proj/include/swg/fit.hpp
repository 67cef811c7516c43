#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swg/likelihood.hpp"

namespace swg {

struct FitOptions {
  std::vector<double> nu_grid = {3, 4, 5, 7, 10, 15, 20, 50};
  int n_starts = 4;
  bool gaussian_baseline = false;  // fit the exact-normal error model instead
  int coarse_evals = 250;          // per-start screening budget (Nelder-Mead)
  int full_evals = 2000;           // polish budget for the winning start
  bool compute_ci = true;
};

struct NuProfileEntry {
  double nu = 0.0;  // unused when gaussian
  bool gaussian = false;
  double loglik = 0.0;
  ModelParams theta;
  std::string algorithm;
  bool converged = false;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct FitResult {
  ModelParams theta_hat;
  double loglik = 0.0;
  std::vector<NuProfileEntry> nu_profile;
  std::map<std::string, Interval> ci95;  // phi, rho, b0, b1, alpha
  bool ci_available = false;
  std::vector<std::string> trace;
};

struct FittingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Maximum-likelihood fit with nu profiled over options.nu_grid.
// Free parameters per branch are optimized unconstrained in transformed
// coordinates: logistic for the stationarity fraction c (phi = c*rho/(N*max d)),
// log for rho and b0, log(b1+1e-8) for b1, identity for alpha.
FitResult fit(const PrecipPanel& panel, const GaugeNetwork& net,
              const CutoffField& cutoffs, const FitOptions& options = {});

}  // namespace swg

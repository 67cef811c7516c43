#pragma once

#include <unordered_map>
#include <vector>

#include "swg/rng.hpp"
#include "swg/special.hpp"

namespace swg {

// -------- Student-t --------

double t_pdf(double x, double nu);
double t_log_pdf(double x, double nu);
// P(T <= x) via the regularized incomplete beta function
double t_cdf(double x, double nu);

// -------- skew-t, Azzalini form --------

struct SkewTParams {
  double xi = 0.0;     // location
  double omega = 1.0;  // scale, > 0
  double alpha = 0.0;  // skewness
  double nu = 1.0;     // degrees of freedom, > 0

  void validate() const;
};

double skewt_pdf(double x, const SkewTParams& p);
double skewt_log_pdf(double x, const SkewTParams& p);
// numerical integral of the pdf; absolute error <= abs_tol
double skewt_cdf(double x, const SkewTParams& p, double abs_tol = 1e-9);

// -------- scaled skew-t (zero mean, unit variance) --------

// delta = alpha/sqrt(1+alpha^2), b_nu = sqrt(nu)*Gamma((nu-1)/2)/(sqrt(pi)*Gamma(nu/2)),
// omega = 1/sqrt(nu/(nu-2) - (b_nu*delta)^2), xi = -omega*b_nu*delta.
struct ScaledSkewT {
  double alpha;
  double nu;
  double delta;
  double b_nu;
  double omega;
  double xi;

  SkewTParams params() const { return {xi, omega, alpha, nu}; }
};

// requires nu > 2 (finite variance)
ScaledSkewT scale_skewt(double alpha, double nu);

double sst_pdf(double x, double alpha, double nu);
double sst_cdf(double x, double alpha, double nu);

std::vector<double> sample_sst_direct(double alpha, double nu, std::size_t n,
                                      RngStream& rng);
std::vector<double> sample_sst_selection(double alpha, double nu, std::size_t n,
                                         RngStream& rng);

// Fast evaluator for one fixed (alpha, nu). The CDF is served from a
// precomputed cumulative Gauss-Kronrod table (graded grid into both
// polynomial tails) with a per-call panel completion, and repeated
// arguments are memoized. Not safe to share one instance across
// concurrent callers because of the memo; construction is cheap, give
// each thread its own.
class SstDist {
 public:
  SstDist(double alpha, double nu);

  double alpha() const { return scaled_.alpha; }
  double nu() const { return scaled_.nu; }
  const ScaledSkewT& scaled() const { return scaled_; }

  double pdf(double x) const;
  double log_pdf(double x) const;
  double cdf(double x) const;
  double log_cdf(double x) const;

  double draw(RngStream& rng) const;

 private:
  // lazily-built fine subdivision of one coarse panel; log_cdf serves most
  // queries from a cubic Hermite on log F (slope = pdf/F at the sub-nodes)
  // and falls back to quadrature where the interpolant is not accurate enough
  struct RefinedPanel {
    std::vector<double> x;
    std::vector<double> F;
    std::vector<double> logF;
    std::vector<double> dlogF;
    std::vector<unsigned char> hermite_ok;
  };

  double cdf_uncached(double x) const;
  const RefinedPanel& refine_panel(std::size_t i) const;

  ScaledSkewT scaled_;
  double log_c_nu_;    // log normalizing constant of t(.;nu)
  double log_c_nu1_;   // same for nu+1 (argument of the T factor)
  double sqrt_nu1_;    // sqrt(nu+1)
  std::vector<double> grid_;  // panel boundaries in x
  std::vector<double> cum_;   // cdf at grid_[i]
  double tail_lo_;            // T(-alpha*sqrt(nu+1); nu+1), deep-left factor
  double tail_hi_;            // T(+alpha*sqrt(nu+1); nu+1)
  mutable std::unordered_map<std::uint64_t, double> logcdf_memo_;
  mutable std::vector<RefinedPanel> refined_;
};

}  // namespace swg

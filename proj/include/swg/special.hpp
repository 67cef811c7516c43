#pragma once

#include <stdexcept>

namespace swg {

// Regularized incomplete beta I_x(a,b), modified Lentz continued fraction.
// Relative error target 1e-15 (continued-fraction tolerance); throws on
// arguments outside [0,1] or nonpositive a,b.
double inc_beta(double a, double b, double x);

// Modified Bessel function of the second kind, order 1. x > 0.
double bessel_k1(double x);

double normal_pdf(double x);
double normal_cdf(double x);
// log(Phi(x)), stable in the deep lower tail
double log_normal_cdf(double x);

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace swg

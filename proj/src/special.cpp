#include "swg/special.hpp"

#include <cmath>

namespace swg {

namespace {

double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double eps = 1e-16;
  const int max_iter = 500;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  throw NumericalError("inc_beta: continued fraction did not converge");
}

}  // namespace

double inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("inc_beta: a,b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("inc_beta: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  double lbt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
               a * std::log(x) + b * std::log1p(-x);
  double bt = std::exp(lbt);
  if (x < (a + 1.0) / (a + b + 2.0))
    return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double bessel_k1(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k1: x must be positive");
  // K1(x) ~ sqrt(pi/2x) e^-x underflows past ~705; the library
  // implementation throws there instead of returning 0
  if (x >= 705.0) return 0.0;
  return std::cyl_bessel_k(1.0, x);
}

double normal_pdf(double x) {
  return 0.3989422804014326779 * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

double log_normal_cdf(double x) {
  if (x > -36.0) {
    double p = normal_cdf(x);
    if (p > 1e-300) return std::log(p);
  }
  // asymptotic: Phi(x) ~ phi(x)/|x| * (1 - 1/x^2 + 3/x^4), x -> -inf
  double x2 = x * x;
  return -0.5 * x2 - 0.9189385332046727418 - std::log(-x) +
         std::log1p(-1.0 / x2 + 3.0 / (x2 * x2));
}

}  // namespace swg

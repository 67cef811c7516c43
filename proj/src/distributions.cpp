#include "swg/distributions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace swg {

namespace {

// G7-K15 Gauss-Kronrod pair (QUADPACK values)
constexpr double kKronrodNodes[8] = {
    0.0,
    0.2077849550078984676006894,
    0.4058451513773971669066064,
    0.5860872354676911302941448,
    0.7415311855993944398638648,
    0.8648644233597690727897128,
    0.9491079123427585245261897,
    0.9914553711208126392068547};
constexpr double kKronrodWeights[8] = {
    0.2094821410847278280129992,
    0.2044329400752988924141620,
    0.1903505780647854099132564,
    0.1690047266392679028265834,
    0.1406532597155259187451896,
    0.1047900103222501838398763,
    0.0630920926299785532907007,
    0.0229353220105292249637320};
constexpr double kGaussWeights[4] = {
    0.4179591836734693877551020,  // node 0
    0.3818300505051189449503698,  // node 2
    0.2797053914892766679014678,  // node 4
    0.1294849661688696932706114}; // node 6

template <class F>
void gk15(const F& f, double a, double b, double& result, double& err) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double k = fc * kKronrodWeights[0];
  double g = fc * kGaussWeights[0];
  for (int i = 1; i < 8; ++i) {
    double x = h * kKronrodNodes[i];
    double fv = f(c - x) + f(c + x);
    k += fv * kKronrodWeights[i];
    if (i % 2 == 0) g += fv * kGaussWeights[i / 2];
  }
  result = k * h;
  err = std::fabs((k - g) * h);
}

template <class F>
double adaptive_gk(const F& f, double a, double b, double tol, int depth = 0) {
  double result, err;
  gk15(f, a, b, result, err);
  double floor_tol = std::max(tol, 1e-16 * (std::fabs(result) + 1e-3));
  if (err <= floor_tol || depth >= 48) {
    if (depth >= 48 && err > 100.0 * floor_tol)
      throw NumericalError("adaptive quadrature failed to converge");
    return result;
  }
  double m = 0.5 * (a + b);
  return adaptive_gk(f, a, m, 0.5 * tol, depth + 1) +
         adaptive_gk(f, m, b, 0.5 * tol, depth + 1);
}

// integrate f over [a, b] split at scale-guided breakpoints so a huge
// interval cannot hide the density's core from the sampler
template <class F>
double segmented_gk(const F& f, double a, double b, double center, double scale,
                    double tol) {
  std::vector<double> cuts{a};
  for (double s : {-1e6, -1e5, -1e4, -1000.0, -100.0, -30.0, -10.0, -4.0, -2.0,
                   -1.0, 0.0, 1.0, 2.0, 4.0, 10.0, 30.0, 100.0, 1000.0, 1e4,
                   1e5, 1e6}) {
    double p = center + scale * s;
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  double seg_tol = tol / static_cast<double>(cuts.size());
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i)
    total += adaptive_gk(f, cuts[i - 1], cuts[i], seg_tol);
  return total;
}

double t_log_norm(double nu) {
  return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
         0.5 * std::log(nu * 3.14159265358979323846);
}

void check_dof(double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw std::domain_error("degrees of freedom must be positive and finite");
}

}  // namespace

double t_pdf(double x, double nu) { return std::exp(t_log_pdf(x, nu)); }

double t_log_pdf(double x, double nu) {
  check_dof(nu);
  if (!std::isfinite(x)) throw std::domain_error("t_pdf: non-finite argument");
  return t_log_norm(nu) - 0.5 * (nu + 1.0) * std::log1p(x * x / nu);
}

double t_cdf(double x, double nu) {
  check_dof(nu);
  if (std::isnan(x)) throw std::domain_error("t_cdf: NaN argument");
  if (x == 0.0) return 0.5;
  if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
  double p = 0.5 * inc_beta(0.5 * nu, 0.5, nu / (nu + x * x));
  return x > 0.0 ? 1.0 - p : p;
}

void SkewTParams::validate() const {
  if (!(omega > 0.0)) throw std::domain_error("skew-t: omega must be positive");
  check_dof(nu);
  if (!std::isfinite(xi) || !std::isfinite(alpha))
    throw std::domain_error("skew-t: non-finite parameter");
}

double skewt_pdf(double x, const SkewTParams& p) {
  return std::exp(skewt_log_pdf(x, p));
}

double skewt_log_pdf(double x, const SkewTParams& p) {
  p.validate();
  double u = (x - p.xi) / p.omega;
  double w = p.alpha * u * std::sqrt((p.nu + 1.0) / (p.nu + u * u));
  double tf = t_cdf(w, p.nu + 1.0);
  double log_tf = tf > 1e-300 ? std::log(tf) : std::log(1e-300);
  return std::log(2.0) + t_log_pdf(u, p.nu) + log_tf - std::log(p.omega);
}

double skewt_cdf(double x, const SkewTParams& p, double abs_tol) {
  p.validate();
  if (std::isnan(x)) throw std::domain_error("skewt_cdf: NaN argument");
  // pick a lower bound where both the density and the remaining tail mass
  // are negligible; the left tail decays like |u|^-(nu+1)
  double lo = std::min(x, p.xi) - 10.0 * p.omega;
  for (int i = 0; i < 200; ++i) {
    double u = (lo - p.xi) / p.omega;
    double tail = skewt_pdf(lo, p) * p.omega * (std::fabs(u) + 1.0) / p.nu;
    if (tail < 0.01 * abs_tol) break;
    lo = p.xi + 2.0 * (lo - p.xi);
  }
  if (x <= lo) return 0.0;
  auto f = [&](double v) { return skewt_pdf(v, p); };
  double val = segmented_gk(f, lo, x, p.xi, p.omega, 0.5 * abs_tol);
  return std::clamp(val, 0.0, 1.0);
}

ScaledSkewT scale_skewt(double alpha, double nu) {
  if (!(nu > 2.0))
    throw std::domain_error("scale_skewt: infinite-variance regime (nu <= 2)");
  if (!std::isfinite(alpha)) throw std::domain_error("scale_skewt: non-finite alpha");
  ScaledSkewT s;
  s.alpha = alpha;
  s.nu = nu;
  s.delta = alpha / std::sqrt(1.0 + alpha * alpha);
  s.b_nu = std::sqrt(nu / 3.14159265358979323846) *
           std::exp(std::lgamma(0.5 * (nu - 1.0)) - std::lgamma(0.5 * nu));
  double bd = s.b_nu * s.delta;
  s.omega = 1.0 / std::sqrt(nu / (nu - 2.0) - bd * bd);
  s.xi = -s.omega * bd;
  return s;
}

double sst_pdf(double x, double alpha, double nu) {
  return skewt_pdf(x, scale_skewt(alpha, nu).params());
}

double sst_cdf(double x, double alpha, double nu) {
  return skewt_cdf(x, scale_skewt(alpha, nu).params());
}

std::vector<double> sample_sst_direct(double alpha, double nu, std::size_t n,
                                      RngStream& rng) {
  ScaledSkewT s = scale_skewt(alpha, nu);
  double comp = std::sqrt(1.0 - s.delta * s.delta);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u0 = rng.normal();
    double u1 = rng.normal();
    double sn = s.delta * std::fabs(u0) + comp * u1;  // standard skew-normal
    double w = std::sqrt(rng.chi_squared(nu) / nu);
    out[i] = s.xi + s.omega * sn / w;
  }
  return out;
}

std::vector<double> sample_sst_selection(double alpha, double nu, std::size_t n,
                                         RngStream& rng) {
  ScaledSkewT s = scale_skewt(alpha, nu);
  double comp = std::sqrt(1.0 - s.delta * s.delta);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    // bivariate t pair with correlation delta, shared chi-square mixer
    double n1 = rng.normal();
    double n2 = rng.normal();
    double w = std::sqrt(rng.chi_squared(nu) / nu);
    double v = n1 / w;
    double q = (s.delta * n1 + comp * n2) / w;
    double z = (q > 0.0) ? v : -v;
    out[i] = s.xi + s.omega * z;
  }
  return out;
}

SstDist::SstDist(double alpha, double nu) : scaled_(scale_skewt(alpha, nu)) {
  log_c_nu_ = t_log_norm(nu);
  log_c_nu1_ = t_log_norm(nu + 1.0);
  sqrt_nu1_ = std::sqrt(nu + 1.0);
  tail_lo_ = t_cdf(-alpha * sqrt_nu1_, nu + 1.0);
  tail_hi_ = t_cdf(alpha * sqrt_nu1_, nu + 1.0);

  // graded panel grid in the standardized variable u: uniform core plus
  // geometric tails out to where the remaining mass is ~1e-14
  double tail_u = std::pow(1e14, 1.0 / nu) + 50.0;
  std::vector<double> us;
  for (double u = -8.0; u <= 8.0 + 1e-12; u += 0.25) us.push_back(u);
  for (double u = 8.0; u < tail_u; u *= 1.2) {
    us.push_back(u * 1.2);
    us.insert(us.begin(), -u * 1.2);
  }
  grid_.resize(us.size());
  std::sort(us.begin(), us.end());
  for (std::size_t i = 0; i < us.size(); ++i)
    grid_[i] = scaled_.xi + scaled_.omega * us[i];

  cum_.resize(grid_.size());
  // mass below the leftmost node, from the deep-tail factorization
  cum_[0] = 2.0 * tail_lo_ * t_cdf(us.front(), nu);
  auto f = [this](double v) { return pdf(v); };
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    double r, e;
    gk15(f, grid_[i - 1], grid_[i], r, e);
    if (e > 1e-11) r = adaptive_gk(f, grid_[i - 1], grid_[i], 1e-13);
    cum_[i] = cum_[i - 1] + r;
  }
  refined_.resize(grid_.size() - 1);
}

const SstDist::RefinedPanel& SstDist::refine_panel(std::size_t i) const {
  RefinedPanel& rp = refined_[i];
  if (!rp.x.empty()) return rp;
  constexpr int m = 16;  // sub-intervals; even, so the midpoint check pairs up
  rp.x.resize(m + 1);
  rp.F.resize(m + 1);
  rp.logF.resize(m + 1);
  rp.dlogF.resize(m + 1);
  rp.hermite_ok.assign(m, 0);
  double a = grid_[i], b = grid_[i + 1];
  for (int k = 0; k <= m; ++k)
    rp.x[k] = a + (b - a) * static_cast<double>(k) / m;
  rp.F[0] = cum_[i];
  auto f = [this](double v) { return pdf(v); };
  for (int k = 1; k <= m; ++k) {
    double r, e;
    gk15(f, rp.x[k - 1], rp.x[k], r, e);
    if (e > 1e-13) r = adaptive_gk(f, rp.x[k - 1], rp.x[k], 1e-14);
    rp.F[k] = rp.F[k - 1] + r;
  }
  for (int k = 0; k <= m; ++k) {
    double F = std::max(rp.F[k], 1e-300);
    rp.logF[k] = std::log(F);
    rp.dlogF[k] = pdf(rp.x[k]) / F;
  }
  // Richardson check: Hermite on the 2h stencil predicted at the shared
  // midpoint node; the h-interval error is ~1/16 of this
  for (int j = 0; j + 2 <= m; j += 2) {
    double h2 = rp.x[j + 2] - rp.x[j];
    double pred = 0.5 * (rp.logF[j] + rp.logF[j + 2]) +
                  0.125 * h2 * (rp.dlogF[j] - rp.dlogF[j + 2]);
    if (std::fabs(pred - rp.logF[j + 1]) < 1.6e-11) {
      rp.hermite_ok[j] = 1;
      rp.hermite_ok[j + 1] = 1;
    }
  }
  return rp;
}

double SstDist::log_pdf(double x) const {
  double u = (x - scaled_.xi) / scaled_.omega;
  double w = scaled_.alpha * u * sqrt_nu1_ / std::sqrt(scaled_.nu + u * u);
  double tf = t_cdf(w, scaled_.nu + 1.0);
  double log_tf = tf > 1e-300 ? std::log(tf) : std::log(1e-300);
  return 0.69314718055994530942 + log_c_nu_ -
         0.5 * (scaled_.nu + 1.0) * std::log1p(u * u / scaled_.nu) + log_tf -
         std::log(scaled_.omega);
}

double SstDist::pdf(double x) const { return std::exp(log_pdf(x)); }

double SstDist::cdf_uncached(double x) const {
  if (x <= grid_.front()) {
    double u = (x - scaled_.xi) / scaled_.omega;
    return 2.0 * tail_lo_ * t_cdf(u, scaled_.nu);
  }
  if (x >= grid_.back()) {
    double u = (x - scaled_.xi) / scaled_.omega;
    return 1.0 - 2.0 * tail_hi_ * (1.0 - t_cdf(u, scaled_.nu));
  }
  auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
  double r, e;
  auto f = [this](double v) { return pdf(v); };
  gk15(f, grid_[i], x, r, e);
  if (e > 1e-12) r = adaptive_gk(f, grid_[i], x, 1e-14);
  return std::clamp(cum_[i] + r, 0.0, 1.0);
}

double SstDist::cdf(double x) const { return cdf_uncached(x); }

double SstDist::log_cdf(double x) const {
  std::uint64_t key = std::bit_cast<std::uint64_t>(x);
  auto it = logcdf_memo_.find(key);
  if (it != logcdf_memo_.end()) return it->second;
  double lp;
  if (x <= grid_.front() || x >= grid_.back()) {
    lp = std::log(std::max(cdf_uncached(x), 1e-300));
  } else {
    auto gi = std::upper_bound(grid_.begin(), grid_.end(), x);
    std::size_t i = static_cast<std::size_t>(gi - grid_.begin()) - 1;
    const RefinedPanel& rp = refine_panel(i);
    auto si = std::upper_bound(rp.x.begin(), rp.x.end(), x);
    std::size_t k = static_cast<std::size_t>(si - rp.x.begin()) - 1;
    if (k + 1 >= rp.x.size()) k = rp.x.size() - 2;
    if (rp.hermite_ok[k]) {
      double h = rp.x[k + 1] - rp.x[k];
      double t = (x - rp.x[k]) / h;
      double omt = 1.0 - t;
      lp = (1.0 + 2.0 * t) * omt * omt * rp.logF[k] +
           h * t * omt * omt * rp.dlogF[k] +
           t * t * (3.0 - 2.0 * t) * rp.logF[k + 1] +
           h * t * t * (t - 1.0) * rp.dlogF[k + 1];
    } else {
      double r, e;
      auto f = [this](double v) { return pdf(v); };
      gk15(f, rp.x[k], x, r, e);
      if (e > 1e-12) r = adaptive_gk(f, rp.x[k], x, 1e-14);
      lp = std::log(std::max(rp.F[k] + r, 1e-300));
    }
  }
  logcdf_memo_.emplace(key, lp);
  return lp;
}

double SstDist::draw(RngStream& rng) const {
  double comp = std::sqrt(1.0 - scaled_.delta * scaled_.delta);
  double u0 = rng.normal();
  double u1 = rng.normal();
  double sn = scaled_.delta * std::fabs(u0) + comp * u1;
  double w = std::sqrt(rng.chi_squared(scaled_.nu) / scaled_.nu);
  return scaled_.xi + scaled_.omega * sn / w;
}

}  // namespace swg

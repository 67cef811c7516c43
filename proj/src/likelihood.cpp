#include "swg/likelihood.hpp"

#include <cmath>

#include "swg/distributions.hpp"

namespace swg {

void ModelParams::validate() const {
  if (!(b0 > 0.0)) throw std::domain_error("params: b0 must be positive");
  if (!(b1 >= 0.0)) throw std::domain_error("params: b1 must be nonnegative");
  if (!(phi >= 0.0) || !(rho > 0.0))
    throw std::domain_error("params: need phi >= 0 and rho > 0");
  if (!gaussian && !(nu > 2.0))
    throw std::domain_error("params: nu must exceed 2 for the scaled skew-t");
}

namespace {

template <class LogPdf, class LogCdf>
double censored_loglik(const PrecipPanel& panel, const GaugeNetwork& net,
                       const CutoffField& cutoffs, const ModelParams& theta,
                       const LogPdf& log_pdf, const LogCdf& log_cdf) {
  theta.validate();
  Eigen::Index t_len = panel.values.rows();
  Eigen::Index n = panel.values.cols();
  if (cutoffs.u.rows() != t_len || cutoffs.u.cols() != n)
    throw ConfigError("loglik: cutoff field shape does not match panel");
  if (static_cast<Eigen::Index>(net.N()) != n)
    throw ConfigError("loglik: network size does not match panel");
  if (!panel.values.allFinite()) throw DataError("loglik: non-finite panel values");

  ARMatrix ar = build_ar_matrix(net, theta.phi, theta.rho);
  double total = 0.0;
  for (Eigen::Index t = 1; t < t_len; ++t) {
    Eigen::VectorXd prev = panel.values.row(t - 1).transpose();
    double sigma = theta.b0 + theta.b1 * prev.mean();
    if (!(sigma > 0.0)) return kLoglikFloor;
    double log_sigma = std::log(sigma);
    Eigen::VectorXd mu = ar.beta * prev;
    for (Eigen::Index s = 0; s < n; ++s) {
      double y = panel.values(t, s);
      if (y > 0.0) {
        total += log_pdf((y - mu(s)) / sigma) - log_sigma;
      } else {
        total += log_cdf((cutoffs.u(t, s) - mu(s)) / sigma);
      }
    }
  }
  return total;
}

}  // namespace

double loglik(const PrecipPanel& panel, const GaugeNetwork& net,
              const CutoffField& cutoffs, const ModelParams& theta) {
  SstDist dist(theta.alpha, theta.nu);
  return censored_loglik(
      panel, net, cutoffs, theta,
      [&](double z) { return dist.log_pdf(z); },
      [&](double z) { return dist.log_cdf(z); });
}

double gaussian_loglik(const PrecipPanel& panel, const GaugeNetwork& net,
                       const CutoffField& cutoffs, const ModelParams& theta) {
  ModelParams t = theta;
  t.gaussian = true;
  return censored_loglik(
      panel, net, cutoffs, t,
      [](double z) { return -0.5 * z * z - 0.9189385332046727418; },
      [](double z) { return log_normal_cdf(z); });
}

}  // namespace swg

#include "swg/spatial.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "swg/special.hpp"

namespace swg {

ARMatrix build_ar_matrix(const GaugeNetwork& net, double phi, double rho) {
  if (!(phi >= 0.0) || !(rho > 0.0))
    throw std::domain_error("build_ar_matrix: need phi >= 0 and rho > 0");
  Eigen::Index n = net.dist.rows();
  ARMatrix ar;
  ar.phi = phi;
  ar.rho = rho;
  ar.beta.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      double d = net.dist(i, j);
      // x*K1(x) -> 1 as x -> 0
      ar.beta(i, j) = (d == 0.0) ? phi : phi * (d / rho) * bessel_k1(d / rho);
    }
  return ar;
}

StationarityCheck check_stationarity(const GaugeNetwork& net, double phi,
                                     double rho) {
  net.validate();
  double dmax = net.max_distance();
  if (net.N() < 2 || dmax <= 0.0)
    throw ConfigError("check_stationarity: degenerate network (all distances zero)");
  double bound = 1.0 / (static_cast<double>(net.N()) * dmax);
  StationarityCheck out;
  out.pass = phi / rho < bound;
  out.margin = bound - phi / rho;
  ARMatrix ar = build_ar_matrix(net, phi, rho);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ar.beta);
  out.spectral_radius = es.eigenvalues().cwiseAbs().maxCoeff();
  return out;
}

}  // namespace swg

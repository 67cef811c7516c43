#pragma once

#include "swg/panel.hpp"

namespace swg {

// Autoregression matrix with Whittle-Matern decay:
//   beta_ij = (phi * d_ij / rho) * K1(d_ij / rho), beta_ii = phi.
struct ARMatrix {
  Eigen::MatrixXd beta;
  double phi;
  double rho;
};

ARMatrix build_ar_matrix(const GaugeNetwork& net, double phi, double rho);

struct StationarityCheck {
  bool pass;                // phi/rho < 1/(N * max d)
  double margin;            // bound - phi/rho
  double spectral_radius;   // of the implied B, diagnostic
};

StationarityCheck check_stationarity(const GaugeNetwork& net, double phi,
                                     double rho);

}  // namespace swg

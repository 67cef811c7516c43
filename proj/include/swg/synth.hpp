#pragma once

#include "swg/simulate.hpp"

namespace swg {

// Synthetic-data setup used by the simulation study: a 3-site network on
// sub-kilometer spacing (distances in km so they sit inside the rho = 1
// stationarity bound), constant censoring threshold u_r, and skew-t
// innovations with the requested (nu, alpha).
struct SynthSpec {
  double nu = 20.0;
  double alpha = 0.0;
  std::size_t T = 10000;
  double phi = 1.0 / 3.0;
  double rho = 1.0;
  double b0 = 0.5;
  double b1 = 0.5;
  double u_r = 1.2;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

struct SynthData {
  PrecipPanel panel;
  GaugeNetwork net;
  CutoffField cutoffs;
  ModelParams params;
};

GaugeNetwork synth_network();

SynthData make_synthetic(const SynthSpec& spec);

}  // namespace swg

#pragma once

#include "swg/occurrence.hpp"
#include "swg/panel.hpp"
#include "swg/spatial.hpp"

namespace swg {

struct ModelParams {
  double phi = 0.0;
  double rho = 1.0;
  double b0 = 1.0;   // > 0
  double b1 = 0.0;   // >= 0
  double alpha = 0.0;
  double nu = 10.0;  // > 2, ignored when gaussian
  bool gaussian = false;

  void validate() const;
};

// large negative sentinel returned when a term degenerates (sigma <= 0)
inline constexpr double kLoglikFloor = -1e100;

// Censored conditional log-likelihood, summed over t = 2..T. The first
// row only conditions. sigma_t = b0 + b1 * mean(y_{t-1}).
double loglik(const PrecipPanel& panel, const GaugeNetwork& net,
              const CutoffField& cutoffs, const ModelParams& theta);

// same likelihood with exact standard-normal errors (Koch-style baseline)
double gaussian_loglik(const PrecipPanel& panel, const GaugeNetwork& net,
                       const CutoffField& cutoffs, const ModelParams& theta);

}  // namespace swg

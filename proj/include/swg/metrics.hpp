#pragma once

#include <optional>

#include "swg/likelihood.hpp"
#include "swg/simulate.hpp"

namespace swg {

// (1/K) sum_k sqrt( (1/NT) sum_ts (Y - Y^B_k)^2 ), reported as %
double mrmse(const PrecipPanel& obs, const SimulationEnsemble& ens);

struct TransitionTable {
  // rows: previous state (wet, dry); cols: current state (wet, dry)
  double wet_wet = 0.0, dry_wet = 0.0;  // conditional on previous wet
  double wet_dry = 0.0, dry_dry = 0.0;  // conditional on previous dry
  bool wet_row_defined = false;
  bool dry_row_defined = false;
};

// pooled over sites and time; wet means y > 0
TransitionTable transition_probs(const PrecipPanel& panel);

// counts[c] = number of time steps with exactly c wet sites
std::vector<std::size_t> concurrence_histogram(const PrecipPanel& panel);
std::vector<std::size_t> concurrence_histogram(const Eigen::MatrixXd& values);

struct QQTable {
  std::vector<double> probs;
  std::vector<double> observed;
  std::vector<double> median;   // of per-replicate quantiles
  std::vector<double> band_lo;  // 2.5% envelope across replicates
  std::vector<double> band_hi;  // 97.5% envelope
};

struct QQPairs {
  QQTable all;                      // zeros included
  std::optional<QQTable> positive;  // positive values only; absent if none
};

// default grid: 199 equally spaced probabilities 0.005..0.995 plus
// tail points 0.999 and 0.9995
std::vector<double> default_qq_probs();

QQPairs qq_pairs(const PrecipPanel& obs, const SimulationEnsemble& ens,
                 const std::vector<double>& probs);

// model-implied conditional dry probability per site,
// F((u(s) - beta_s'y_prev) / (b0 + b1*mean(y_prev)))
Eigen::VectorXd dry_probability(const ModelParams& params,
                                const Eigen::VectorXd& cutoff_row,
                                const Eigen::VectorXd& y_prev,
                                const GaugeNetwork& net);

struct EvaluationReport {
  double mrmse_pct = 0.0;
  TransitionTable obs_transitions;
  TransitionTable sim_transitions;  // pooled over replicates
  std::vector<std::size_t> obs_concurrence;
  std::vector<std::size_t> sim_concurrence;  // summed over replicates
  QQPairs qq;
};

EvaluationReport evaluate(const PrecipPanel& obs, const SimulationEnsemble& ens,
                          const std::vector<double>& qq_probs = default_qq_probs());

}  // namespace swg

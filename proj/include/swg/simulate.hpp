#pragma once

#include <optional>

#include "swg/fit.hpp"
#include "swg/likelihood.hpp"
#include "swg/rng.hpp"

namespace swg {

enum class SimMode { unconditional, one_step_conditional };

struct SimulationEnsemble {
  std::vector<Eigen::MatrixXd> replicates;  // K matrices, T x N
  SimMode mode = SimMode::unconditional;
  std::uint64_t seed = 0;
  ModelParams params;

  std::size_t K() const { return replicates.size(); }
};

// One trajectory of the censored VAR. When y0 is absent the chain starts
// from zero with 500 discarded warm-up steps (warm-up censors against the
// first cutoff row). Replicate streams: substream = stream.
Eigen::MatrixXd simulate_unconditional(const ModelParams& params,
                                       const GaugeNetwork& net,
                                       const CutoffField& cutoffs, std::size_t T,
                                       const std::optional<Eigen::VectorXd>& y0,
                                       std::uint64_t seed,
                                       std::uint64_t stream = 0);

// Each row t >= 2 is drawn conditional on the OBSERVED previous row; the
// first row is copied from the observations.
SimulationEnsemble simulate_conditional_one_step(const ModelParams& params,
                                                 const GaugeNetwork& net,
                                                 const CutoffField& cutoffs,
                                                 const PrecipPanel& panel,
                                                 std::size_t K,
                                                 std::uint64_t seed);

SimulationEnsemble parametric_bootstrap(const FitResult& fit,
                                        const GaugeNetwork& net,
                                        const CutoffField& cutoffs,
                                        std::size_t T, std::size_t K,
                                        std::uint64_t seed);

struct PredictionBands {
  Eigen::MatrixXd mean;  // T x N ensemble mean
  std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> bands;  // per level
  std::vector<double> levels;
};

// cellwise ensemble mean and central quantile bands; conditional-mode only
PredictionBands predict(const SimulationEnsemble& ensemble,
                        const std::vector<double>& levels);

}  // namespace swg

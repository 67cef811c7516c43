#include "swg/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "swg/distributions.hpp"

namespace swg {

namespace {

constexpr std::size_t kBurnIn = 500;

void require_stationary(const GaugeNetwork& net, const ModelParams& p) {
  StationarityCheck chk = check_stationarity(net, p.phi, p.rho);
  if (!chk.pass)
    throw ConfigError("simulate: parameters violate the stationarity bound "
                      "(phi/rho margin " + std::to_string(chk.margin) + ")");
}

// one censored-VAR step; prev is overwritten with the new row
void step(const Eigen::MatrixXd& beta, const ModelParams& p, const SstDist* dist,
          const Eigen::VectorXd& cut_row, RngStream& rng, Eigen::VectorXd& prev) {
  double sigma = p.b0 + p.b1 * prev.mean();
  Eigen::VectorXd mu = beta * prev;
  for (Eigen::Index s = 0; s < prev.size(); ++s) {
    double z = dist ? dist->draw(rng) : rng.normal();
    double x = mu(s) + sigma * z;
    prev(s) = x > cut_row(s) ? x : 0.0;
  }
}

}  // namespace

Eigen::MatrixXd simulate_unconditional(const ModelParams& params,
                                       const GaugeNetwork& net,
                                       const CutoffField& cutoffs, std::size_t T,
                                       const std::optional<Eigen::VectorXd>& y0,
                                       std::uint64_t seed, std::uint64_t stream) {
  params.validate();
  require_stationary(net, params);
  Eigen::Index n = static_cast<Eigen::Index>(net.N());
  if (cutoffs.u.rows() < static_cast<Eigen::Index>(T) || cutoffs.u.cols() != n)
    throw ConfigError("simulate: cutoff field too small for requested T");
  if (y0 && ((y0->size() != n) || (y0->minCoeff() < 0.0)))
    throw ConfigError("simulate: y0 must be a nonnegative N-vector");

  ARMatrix ar = build_ar_matrix(net, params.phi, params.rho);
  std::optional<SstDist> dist;
  if (!params.gaussian) dist.emplace(params.alpha, params.nu);
  const SstDist* dptr = dist ? &*dist : nullptr;

  RngStream rng(seed, stream);
  Eigen::VectorXd state = y0 ? *y0 : Eigen::VectorXd::Zero(n);
  if (!y0) {
    Eigen::VectorXd first_cut = cutoffs.u.row(0).transpose();
    for (std::size_t i = 0; i < kBurnIn; ++i)
      step(ar.beta, params, dptr, first_cut, rng, state);
  }

  Eigen::MatrixXd out(static_cast<Eigen::Index>(T), n);
  out.row(0) = state.transpose();
  for (std::size_t t = 1; t < T; ++t) {
    step(ar.beta, params, dptr,
         cutoffs.u.row(static_cast<Eigen::Index>(t)).transpose(), rng, state);
    out.row(static_cast<Eigen::Index>(t)) = state.transpose();
  }
  return out;
}

SimulationEnsemble simulate_conditional_one_step(const ModelParams& params,
                                                 const GaugeNetwork& net,
                                                 const CutoffField& cutoffs,
                                                 const PrecipPanel& panel,
                                                 std::size_t K,
                                                 std::uint64_t seed) {
  params.validate();
  require_stationary(net, params);
  Eigen::Index t_len = panel.values.rows();
  Eigen::Index n = panel.values.cols();
  if (cutoffs.u.rows() != t_len || cutoffs.u.cols() != n)
    throw ConfigError("simulate: cutoff field shape does not match panel");

  ARMatrix ar = build_ar_matrix(net, params.phi, params.rho);
  std::optional<SstDist> dist;
  if (!params.gaussian) dist.emplace(params.alpha, params.nu);

  SimulationEnsemble ens;
  ens.mode = SimMode::one_step_conditional;
  ens.seed = seed;
  ens.params = params;
  ens.replicates.reserve(K);
  for (std::size_t k = 0; k < K; ++k) {
    RngStream rng(seed, k);
    Eigen::MatrixXd rep(t_len, n);
    rep.row(0) = panel.values.row(0);
    for (Eigen::Index t = 1; t < t_len; ++t) {
      Eigen::VectorXd prev = panel.values.row(t - 1).transpose();
      double sigma = params.b0 + params.b1 * prev.mean();
      Eigen::VectorXd mu = ar.beta * prev;
      for (Eigen::Index s = 0; s < n; ++s) {
        double z = dist ? dist->draw(rng) : rng.normal();
        double x = mu(s) + sigma * z;
        rep(t, s) = x > cutoffs.u(t, s) ? x : 0.0;
      }
    }
    ens.replicates.push_back(std::move(rep));
  }
  return ens;
}

SimulationEnsemble parametric_bootstrap(const FitResult& fit,
                                        const GaugeNetwork& net,
                                        const CutoffField& cutoffs,
                                        std::size_t T, std::size_t K,
                                        std::uint64_t seed) {
  SimulationEnsemble ens;
  ens.mode = SimMode::unconditional;
  ens.seed = seed;
  ens.params = fit.theta_hat;
  ens.replicates.reserve(K);
  for (std::size_t k = 0; k < K; ++k)
    ens.replicates.push_back(simulate_unconditional(
        fit.theta_hat, net, cutoffs, T, std::nullopt, seed, k));
  return ens;
}

PredictionBands predict(const SimulationEnsemble& ensemble,
                        const std::vector<double>& levels) {
  if (ensemble.mode != SimMode::one_step_conditional)
    throw ConfigError("predict: requires a one-step-conditional ensemble");
  if (ensemble.K() < 2) throw ConfigError("predict: need K >= 2 replicates");
  Eigen::Index t_len = ensemble.replicates[0].rows();
  Eigen::Index n = ensemble.replicates[0].cols();
  std::size_t k = ensemble.K();

  PredictionBands out;
  out.levels = levels;
  out.mean = Eigen::MatrixXd::Zero(t_len, n);
  for (const auto& rep : ensemble.replicates) out.mean += rep;
  out.mean /= static_cast<double>(k);

  std::vector<double> cell(k);
  for (double level : levels) {
    if (!(level > 0.0 && level < 1.0))
      throw ConfigError("predict: band levels must lie in (0,1)");
    Eigen::MatrixXd lo(t_len, n), hi(t_len, n);
    double p_lo = 0.5 * (1.0 - level), p_hi = 1.0 - p_lo;
    for (Eigen::Index t = 0; t < t_len; ++t)
      for (Eigen::Index s = 0; s < n; ++s) {
        for (std::size_t i = 0; i < k; ++i) cell[i] = ensemble.replicates[i](t, s);
        std::sort(cell.begin(), cell.end());
        auto q = [&](double p) {
          double h = p * static_cast<double>(k - 1);
          std::size_t j = static_cast<std::size_t>(std::floor(h));
          if (j + 1 >= k) return cell.back();
          return cell[j] + (h - static_cast<double>(j)) * (cell[j + 1] - cell[j]);
        };
        lo(t, s) = q(p_lo);
        hi(t, s) = q(p_hi);
      }
    out.bands.emplace_back(std::move(lo), std::move(hi));
  }
  return out;
}

}  // namespace swg

#include "swg/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "swg/distributions.hpp"

namespace swg {

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  std::size_t n = sorted.size();
  double h = p * static_cast<double>(n - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= n) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

std::vector<double> flatten(const Eigen::MatrixXd& m, bool positive_only) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index t = 0; t < m.rows(); ++t)
    for (Eigen::Index s = 0; s < m.cols(); ++s)
      if (!positive_only || m(t, s) > 0.0) out.push_back(m(t, s));
  std::sort(out.begin(), out.end());
  return out;
}

QQTable qq_table(const std::vector<double>& obs_sorted,
                 const std::vector<std::vector<double>>& rep_sorted,
                 const std::vector<double>& probs) {
  QQTable tab;
  tab.probs = probs;
  std::size_t k = rep_sorted.size();
  std::vector<double> rq(k);
  for (double p : probs) {
    tab.observed.push_back(quantile_sorted(obs_sorted, p));
    for (std::size_t i = 0; i < k; ++i) rq[i] = quantile_sorted(rep_sorted[i], p);
    std::sort(rq.begin(), rq.end());
    tab.median.push_back(quantile_sorted(rq, 0.5));
    tab.band_lo.push_back(quantile_sorted(rq, 0.025));
    tab.band_hi.push_back(quantile_sorted(rq, 0.975));
  }
  return tab;
}

void accumulate_transitions(const Eigen::MatrixXd& v, double counts[2][2]) {
  for (Eigen::Index t = 1; t < v.rows(); ++t)
    for (Eigen::Index s = 0; s < v.cols(); ++s) {
      int prev_wet = v(t - 1, s) > 0.0 ? 0 : 1;
      int cur_wet = v(t, s) > 0.0 ? 0 : 1;
      counts[prev_wet][cur_wet] += 1.0;
    }
}

TransitionTable to_table(const double counts[2][2]) {
  TransitionTable tab;
  double wet_total = counts[0][0] + counts[0][1];
  double dry_total = counts[1][0] + counts[1][1];
  if (wet_total > 0.0) {
    tab.wet_row_defined = true;
    tab.wet_wet = counts[0][0] / wet_total;
    tab.dry_wet = 1.0 - tab.wet_wet;  // exact-complement row sum
  }
  if (dry_total > 0.0) {
    tab.dry_row_defined = true;
    tab.wet_dry = counts[1][0] / dry_total;
    tab.dry_dry = 1.0 - tab.wet_dry;
  }
  return tab;
}

}  // namespace

double mrmse(const PrecipPanel& obs, const SimulationEnsemble& ens) {
  if (ens.K() == 0) throw ConfigError("mrmse: empty ensemble");
  double nt = static_cast<double>(obs.values.size());
  double acc = 0.0;
  for (const auto& rep : ens.replicates) {
    if (rep.rows() != obs.values.rows() || rep.cols() != obs.values.cols())
      throw ConfigError("mrmse: replicate shape does not match observations");
    acc += std::sqrt((obs.values - rep).squaredNorm() / nt);
  }
  return 100.0 * acc / static_cast<double>(ens.K());
}

TransitionTable transition_probs(const PrecipPanel& panel) {
  if (panel.T() < 2) throw DataError("transition_probs: need T >= 2");
  double counts[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  accumulate_transitions(panel.values, counts);
  return to_table(counts);
}

std::vector<std::size_t> concurrence_histogram(const Eigen::MatrixXd& values) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(values.cols()) + 1, 0);
  for (Eigen::Index t = 0; t < values.rows(); ++t) {
    std::size_t wet = 0;
    for (Eigen::Index s = 0; s < values.cols(); ++s)
      if (values(t, s) > 0.0) ++wet;
    ++counts[wet];
  }
  return counts;
}

std::vector<std::size_t> concurrence_histogram(const PrecipPanel& panel) {
  return concurrence_histogram(panel.values);
}

std::vector<double> default_qq_probs() {
  std::vector<double> probs;
  for (int i = 1; i <= 199; ++i) probs.push_back(0.005 * i);
  probs.push_back(0.999);
  probs.push_back(0.9995);
  return probs;
}

QQPairs qq_pairs(const PrecipPanel& obs, const SimulationEnsemble& ens,
                 const std::vector<double>& probs) {
  for (double p : probs)
    if (!(p > 0.0 && p < 1.0))
      throw ConfigError("qq_pairs: probabilities must lie in (0,1)");
  QQPairs out;
  std::vector<double> obs_all = flatten(obs.values, false);
  std::vector<std::vector<double>> rep_all;
  for (const auto& rep : ens.replicates) rep_all.push_back(flatten(rep, false));
  out.all = qq_table(obs_all, rep_all, probs);

  std::vector<double> obs_pos = flatten(obs.values, true);
  if (!obs_pos.empty()) {
    std::vector<std::vector<double>> rep_pos;
    bool ok = true;
    for (const auto& rep : ens.replicates) {
      rep_pos.push_back(flatten(rep, true));
      if (rep_pos.back().empty()) ok = false;
    }
    if (ok) out.positive = qq_table(obs_pos, rep_pos, probs);
  }
  return out;
}

Eigen::VectorXd dry_probability(const ModelParams& params,
                                const Eigen::VectorXd& cutoff_row,
                                const Eigen::VectorXd& y_prev,
                                const GaugeNetwork& net) {
  params.validate();
  if (y_prev.minCoeff() < 0.0)
    throw std::domain_error("dry_probability: y_prev must be nonnegative");
  double sigma = params.b0 + params.b1 * y_prev.mean();
  if (!(sigma > 0.0)) throw std::domain_error("dry_probability: sigma <= 0");
  ARMatrix ar = build_ar_matrix(net, params.phi, params.rho);
  Eigen::VectorXd mu = ar.beta * y_prev;
  Eigen::VectorXd out(cutoff_row.size());
  std::optional<SstDist> dist;
  if (!params.gaussian) dist.emplace(params.alpha, params.nu);
  for (Eigen::Index s = 0; s < cutoff_row.size(); ++s) {
    double z = (cutoff_row(s) - mu(s)) / sigma;
    out(s) = dist ? dist->cdf(z) : normal_cdf(z);
  }
  return out;
}

EvaluationReport evaluate(const PrecipPanel& obs, const SimulationEnsemble& ens,
                          const std::vector<double>& qq_probs) {
  EvaluationReport rep;
  rep.mrmse_pct = mrmse(obs, ens);
  rep.obs_transitions = transition_probs(obs);
  double counts[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  for (const auto& r : ens.replicates) accumulate_transitions(r, counts);
  rep.sim_transitions = to_table(counts);
  rep.obs_concurrence = concurrence_histogram(obs);
  rep.sim_concurrence.assign(obs.N() + 1, 0);
  for (const auto& r : ens.replicates) {
    auto h = concurrence_histogram(r);
    for (std::size_t i = 0; i < h.size(); ++i) rep.sim_concurrence[i] += h[i];
  }
  rep.qq = qq_pairs(obs, ens, qq_probs);
  return rep;
}

}  // namespace swg

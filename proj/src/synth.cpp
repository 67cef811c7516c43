#include "swg/synth.hpp"

namespace swg {

namespace {
// 2016-04-04T00:00:00Z, matching the gauge campaign start
constexpr std::int64_t kEpochStart = 1459728000;
constexpr std::int64_t kStepSeconds = 30;
}  // namespace

GaugeNetwork synth_network() {
  return GaugeNetwork::from_coords({"site_1", "site_2", "site_3"},
                                   {{0.0, 0.0}, {0.3, 0.0}, {0.0, 0.4}});
}

SynthData make_synthetic(const SynthSpec& spec) {
  SynthData out;
  out.net = synth_network();
  out.params.phi = spec.phi;
  out.params.rho = spec.rho;
  out.params.b0 = spec.b0;
  out.params.b1 = spec.b1;
  out.params.alpha = spec.alpha;
  out.params.nu = spec.nu;

  out.cutoffs.u_r = spec.u_r;
  out.cutoffs.u = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(spec.T),
                                            static_cast<Eigen::Index>(out.net.N()),
                                            spec.u_r);

  out.panel.sites = out.net.site_ids;
  out.panel.values = simulate_unconditional(out.params, out.net, out.cutoffs,
                                            spec.T, std::nullopt, spec.seed,
                                            spec.stream);
  out.panel.timestamps.resize(spec.T);
  for (std::size_t t = 0; t < spec.T; ++t)
    out.panel.timestamps[t] = kEpochStart + kStepSeconds * static_cast<std::int64_t>(t);
  return out;
}

}  // namespace swg

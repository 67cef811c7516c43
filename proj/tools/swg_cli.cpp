#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "swg/io.hpp"
#include "swg/occurrence.hpp"
#include "swg/special.hpp"
#include "swg/synth.hpp"

namespace fs = std::filesystem;
using namespace swg;

namespace {

// exit codes: 0 success, 2 config error, 3 data error, 4 numerical failure
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

void emit_error(const char* category, const std::string& message) {
  std::cerr << "{\"error\":{\"category\":\"" << category << "\",\"message\":\""
            << message << "\"}}\n";
}

struct SynthArgs {
  double nu = 20.0, alpha = 0.0, phi = 1.0 / 3.0, rho = 1.0, b0 = 0.5, b1 = 0.5;
  double u_r = 0.0;
  std::size_t T = 10000;
  std::uint64_t seed = 0, stream = 0;
  std::string out;
};

struct FitArgs {
  std::string data, network, cutoffs, out = "fit.json", cutoffs_out;
  double u_r = 0.0;
  int h_max = 2, n_starts = 4, coarse_evals = 250, full_evals = 2000;
  std::vector<double> nu_grid;
  bool gaussian = false, no_ci = false;
};

struct SimArgs {
  std::string fit, network, cutoffs, data, mode = "unconditional", out;
  std::size_t T = 0, K = 1;
  std::uint64_t seed = 0;
};

struct PredictArgs {
  std::string ensemble, data, out;
  std::vector<double> levels = {0.95};
};

struct EvalArgs {
  std::string data, ensemble, out;
};

CutoffField cutoffs_for_fit(const FitArgs& args, const PrecipPanel& panel) {
  if (!args.cutoffs.empty()) return load_cutoffs(args.cutoffs);
  OccurrenceModel occ = fit_occurrence(panel, args.h_max);
  return estimate_cutoffs(panel, occ, args.u_r);
}

int run_synth(const SynthArgs& args) {
  SynthSpec spec;
  spec.nu = args.nu;
  spec.alpha = args.alpha;
  spec.T = args.T;
  spec.phi = args.phi;
  spec.rho = args.rho;
  spec.b0 = args.b0;
  spec.b1 = args.b1;
  spec.u_r = args.u_r;
  spec.seed = args.seed;
  spec.stream = args.stream;
  SynthData data = make_synthetic(spec);
  fs::create_directories(args.out);
  save_panel(data.panel, fs::path(args.out) / "panel.csv");
  save_network(data.net, fs::path(args.out) / "network.csv");
  save_cutoffs(data.cutoffs, fs::path(args.out) / "cutoffs.json");
  return 0;
}

int run_fit(const FitArgs& args) {
  PrecipPanel panel = load_panel(args.data);
  GaugeNetwork net = load_network(args.network);
  if (args.cutoffs.empty() && !(args.u_r > 0.0))
    throw ConfigError("fit: --u-r must be positive when estimating cutoffs");
  CutoffField cutoffs = cutoffs_for_fit(args, panel);
  FitOptions opt;
  if (!args.nu_grid.empty()) opt.nu_grid = args.nu_grid;
  opt.n_starts = args.n_starts;
  opt.coarse_evals = args.coarse_evals;
  opt.full_evals = args.full_evals;
  opt.gaussian_baseline = args.gaussian;
  opt.compute_ci = !args.no_ci;
  FitResult result = fit(panel, net, cutoffs, opt);
  save_fit(result, args.out);
  if (!args.cutoffs_out.empty()) save_cutoffs(cutoffs, args.cutoffs_out);
  return 0;
}

int run_simulate(const SimArgs& args) {
  FitResult fr = load_fit(args.fit);
  GaugeNetwork net = load_network(args.network);
  CutoffField cutoffs = load_cutoffs(args.cutoffs);
  SimulationEnsemble ens;
  if (args.mode == "unconditional") {
    std::size_t t_len =
        args.T > 0 ? args.T : static_cast<std::size_t>(cutoffs.u.rows());
    ens = parametric_bootstrap(fr, net, cutoffs, t_len, args.K, args.seed);
  } else if (args.mode == "conditional") {
    if (args.data.empty())
      throw ConfigError("simulate: conditional mode needs --data");
    PrecipPanel panel = load_panel(args.data);
    ens = simulate_conditional_one_step(fr.theta_hat, net, cutoffs, panel,
                                        args.K, args.seed);
  } else {
    throw ConfigError("simulate: mode must be unconditional or conditional");
  }
  save_ensemble(ens, args.out);
  return 0;
}

int run_predict(const PredictArgs& args) {
  SimulationEnsemble ens = load_ensemble(args.ensemble);
  PrecipPanel panel = load_panel(args.data);
  PredictionBands pb = predict(ens, args.levels);
  save_prediction(pb, panel.timestamps, panel.sites, args.out);
  return 0;
}

int run_evaluate(const EvalArgs& args) {
  PrecipPanel panel = load_panel(args.data);
  SimulationEnsemble ens = load_ensemble(args.ensemble);
  EvaluationReport report = evaluate(panel, ens);
  save_report(report, args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"censored vector-autoregressive precipitation generator"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  synth->add_option("--nu", synth_args.nu, "innovation degrees of freedom");
  synth->add_option("--alpha", synth_args.alpha, "innovation skewness");
  synth->add_option("--t", synth_args.T, "series length");
  synth->add_option("--phi", synth_args.phi, "AR kernel scale");
  synth->add_option("--rho", synth_args.rho, "AR kernel range");
  synth->add_option("--b0", synth_args.b0, "baseline innovation scale");
  synth->add_option("--b1", synth_args.b1, "heteroscedasticity slope");
  synth->add_option("--u-r", synth_args.u_r, "censoring threshold (mm/hr)")
      ->required();
  synth->add_option("--seed", synth_args.seed, "RNG seed")->required();
  synth->add_option("--stream", synth_args.stream, "RNG substream");
  synth->add_option("--out", synth_args.out, "output directory")->required();

  FitArgs fit_args;
  CLI::App* fitc = app.add_subcommand("fit", "maximum-likelihood fit");
  fitc->add_option("--data", fit_args.data, "panel CSV")->required();
  fitc->add_option("--network", fit_args.network, "network CSV")->required();
  fitc->add_option("--u-r", fit_args.u_r, "instrument precision limit (mm/hr)");
  fitc->add_option("--cutoffs", fit_args.cutoffs,
                   "precomputed cutoff field (skips estimation)");
  fitc->add_option("--cutoffs-out", fit_args.cutoffs_out,
                   "write the cutoff field used");
  fitc->add_option("--h-max", fit_args.h_max, "max harmonic order");
  fitc->add_option("--nu-grid", fit_args.nu_grid, "profile grid for nu");
  fitc->add_option("--n-starts", fit_args.n_starts, "multi-start count");
  fitc->add_option("--coarse-evals", fit_args.coarse_evals, "screening budget");
  fitc->add_option("--full-evals", fit_args.full_evals, "polish budget");
  fitc->add_flag("--gaussian", fit_args.gaussian, "Gaussian-error baseline");
  fitc->add_flag("--no-ci", fit_args.no_ci, "skip confidence intervals");
  fitc->add_option("--out", fit_args.out, "fit result path")->required();

  SimArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "draw a model ensemble");
  sim->add_option("--fit", sim_args.fit, "fit result JSON")->required();
  sim->add_option("--network", sim_args.network, "network CSV")->required();
  sim->add_option("--cutoffs", sim_args.cutoffs, "cutoff field JSON")->required();
  sim->add_option("--mode", sim_args.mode, "unconditional or conditional");
  sim->add_option("--data", sim_args.data, "observed panel (conditional mode)");
  sim->add_option("--t", sim_args.T, "replicate length (unconditional)");
  sim->add_option("--k", sim_args.K, "replicate count");
  sim->add_option("--seed", sim_args.seed, "RNG seed")->required();
  sim->add_option("--out", sim_args.out, "ensemble directory")->required();

  PredictArgs pred_args;
  CLI::App* pred = app.add_subcommand("predict", "ensemble mean and bands");
  pred->add_option("--ensemble", pred_args.ensemble, "ensemble manifest")
      ->required();
  pred->add_option("--data", pred_args.data, "panel CSV (timestamps/sites)")
      ->required();
  pred->add_option("--levels", pred_args.levels, "band levels in (0,1)");
  pred->add_option("--out", pred_args.out, "output directory")->required();

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("evaluate", "metrics report");
  eval->add_option("--data", eval_args.data, "observed panel CSV")->required();
  eval->add_option("--ensemble", eval_args.ensemble, "ensemble manifest")
      ->required();
  eval->add_option("--out", eval_args.out, "report directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    emit_error("config", e.what());
    return kExitConfig;
  }

  try {
    if (synth->parsed()) return run_synth(synth_args);
    if (fitc->parsed()) return run_fit(fit_args);
    if (sim->parsed()) return run_simulate(sim_args);
    if (pred->parsed()) return run_predict(pred_args);
    if (eval->parsed()) return run_evaluate(eval_args);
  } catch (const ConfigError& e) {
    emit_error("config", e.what());
    return kExitConfig;
  } catch (const DataError& e) {
    emit_error("data", e.what());
    return kExitData;
  } catch (const NumericalError& e) {
    emit_error("numerical", e.what());
    return kExitNumerical;
  } catch (const FittingError& e) {
    emit_error("numerical", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    emit_error("numerical", e.what());
    return kExitNumerical;
  }
  return 0;
}

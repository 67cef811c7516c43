#pragma once

#include <filesystem>
#include <string>

#include "swg/fit.hpp"
#include "swg/metrics.hpp"
#include "swg/occurrence.hpp"
#include "swg/simulate.hpp"

namespace swg {

inline constexpr int kSchemaVersion = 1;

// panels: header "timestamp,site_1,...,site_N", ISO-8601 UTC timestamps
PrecipPanel load_panel(const std::filesystem::path& path);
void save_panel(const PrecipPanel& panel, const std::filesystem::path& path);

// networks: either "site,x_m,y_m" coordinate rows, or a symmetric distance
// matrix with header "site,<site_1>,...,<site_N>"
GaugeNetwork load_network(const std::filesystem::path& path);
void save_network(const GaugeNetwork& net, const std::filesystem::path& path);

void save_cutoffs(const CutoffField& cutoffs, const std::filesystem::path& path);
CutoffField load_cutoffs(const std::filesystem::path& path);

void save_fit(const FitResult& fit, const std::filesystem::path& path);
FitResult load_fit(const std::filesystem::path& path);

// one CSV per replicate plus a JSON manifest carrying seed and substreams
void save_ensemble(const SimulationEnsemble& ens, const std::filesystem::path& dir,
                   const std::string& basename = "replicate");
SimulationEnsemble load_ensemble(const std::filesystem::path& manifest_path);

void save_report(const EvaluationReport& report, const std::filesystem::path& dir);

void save_prediction(const PredictionBands& pred,
                     const std::vector<std::int64_t>& timestamps,
                     const std::vector<std::string>& sites,
                     const std::filesystem::path& dir);

std::string format_timestamp(std::int64_t epoch_seconds);
std::int64_t parse_timestamp(const std::string& iso);

}  // namespace swg

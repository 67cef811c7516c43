#include "swg/io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace swg {

using nlohmann::json;

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw DataError("parse error at line " + std::to_string(line_no) +
                    ": bad number '" + s + "'");
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

json params_to_json(const ModelParams& p) {
  return {{"phi", p.phi},     {"rho", p.rho},   {"b0", p.b0},
          {"b1", p.b1},       {"alpha", p.alpha}, {"nu", p.nu},
          {"gaussian", p.gaussian}};
}

ModelParams params_from_json(const json& j) {
  ModelParams p;
  p.phi = j.at("phi");
  p.rho = j.at("rho");
  p.b0 = j.at("b0");
  p.b1 = j.at("b1");
  p.alpha = j.at("alpha");
  p.nu = j.at("nu");
  p.gaussian = j.at("gaussian");
  return p;
}

void save_matrix_csv(const Eigen::MatrixXd& m,
                     const std::vector<std::int64_t>& timestamps,
                     const std::vector<std::string>& sites,
                     const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "timestamp";
  for (const auto& s : sites) out << ',' << s;
  out << '\n';
  for (Eigen::Index t = 0; t < m.rows(); ++t) {
    out << format_timestamp(timestamps[static_cast<std::size_t>(t)]);
    for (Eigen::Index s = 0; s < m.cols(); ++s) out << ',' << fmt17(m(t, s));
    out << '\n';
  }
}

}  // namespace

std::string format_timestamp(std::int64_t epoch_seconds) {
  std::time_t tt = static_cast<std::time_t>(epoch_seconds);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::int64_t parse_timestamp(const std::string& iso) {
  std::tm tm{};
  int y, mo, d, h, mi, se;
  if (std::sscanf(iso.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi, &se) != 6)
    throw DataError("bad timestamp '" + iso + "'");
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = se;
  return static_cast<std::int64_t>(timegm(&tm));
}

PrecipPanel load_panel(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty panel file " + path.string());
  auto header = split_csv(line);
  if (header.size() < 2 || header[0] != "timestamp")
    throw DataError("panel header must be 'timestamp,<site>,...'");
  PrecipPanel panel;
  panel.sites.assign(header.begin() + 1, header.end());
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw DataError("parse error at line " + std::to_string(line_no) +
                      ": expected " + std::to_string(header.size()) + " cells");
    panel.timestamps.push_back(parse_timestamp(cells[0]));
    std::vector<double> row;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      double v = parse_double(cells[i], line_no);
      if (v < 0.0)
        throw DataError("negative value at line " + std::to_string(line_no) +
                        ", site " + panel.sites[i - 1]);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("panel has no data rows");
  panel.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(panel.sites.size()));
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t s = 0; s < rows[t].size(); ++s)
      panel.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) =
          rows[t][s];
  // report gaps as missing instants, not just "irregular step"
  if (panel.timestamps.size() >= 2) {
    std::int64_t step = panel.timestamps[1] - panel.timestamps[0];
    if (step <= 0) throw DataError("non-monotone timestamps");
    for (std::size_t i = 2; i < panel.timestamps.size(); ++i) {
      std::int64_t got = panel.timestamps[i] - panel.timestamps[i - 1];
      if (got != step) {
        if (got > step && got % step == 0)
          throw DataError("gap before " + format_timestamp(panel.timestamps[i]) +
                          ": " + std::to_string(got / step - 1) +
                          " missing instant(s)");
        throw DataError("irregular time step at " +
                        format_timestamp(panel.timestamps[i]));
      }
    }
  }
  panel.validate();
  return panel;
}

void save_panel(const PrecipPanel& panel, const std::filesystem::path& path) {
  save_matrix_csv(panel.values, panel.timestamps, panel.sites, path);
}

GaugeNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty network file");
  auto header = split_csv(line);
  if (header.size() == 3 && header[0] == "site" && header[1] == "x_m" &&
      header[2] == "y_m") {
    std::vector<std::string> ids;
    std::vector<std::pair<double, double>> xy;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      auto cells = split_csv(line);
      if (cells.size() != 3)
        throw DataError("network parse error at line " + std::to_string(line_no));
      ids.push_back(cells[0]);
      xy.emplace_back(parse_double(cells[1], line_no), parse_double(cells[2], line_no));
    }
    try {
      return GaugeNetwork::from_coords(std::move(ids), std::move(xy));
    } catch (const ConfigError& e) {
      throw DataError(e.what());
    }
  }
  // distance-matrix form: header "site,<id>,...,<id>"
  if (header.size() < 2 || header[0] != "site")
    throw DataError("network header must be 'site,x_m,y_m' or 'site,<ids...>'");
  std::vector<std::string> ids(header.begin() + 1, header.end());
  Eigen::MatrixXd d(ids.size(), ids.size());
  std::size_t row = 0, line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != ids.size() + 1 || row >= ids.size() || cells[0] != ids[row])
      throw DataError("network matrix parse error at line " + std::to_string(line_no));
    for (std::size_t j = 0; j < ids.size(); ++j)
      d(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) =
          parse_double(cells[j + 1], line_no);
    ++row;
  }
  if (row != ids.size()) throw DataError("network matrix has too few rows");
  try {
    return GaugeNetwork::from_distances(std::move(ids), std::move(d));
  } catch (const ConfigError& e) {
    throw DataError(e.what());
  }
}

void save_network(const GaugeNetwork& net, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  if (!net.coords.empty()) {
    out << "site,x_m,y_m\n";
    for (std::size_t i = 0; i < net.N(); ++i)
      out << net.site_ids[i] << ',' << fmt17(net.coords[i].first) << ','
          << fmt17(net.coords[i].second) << '\n';
    return;
  }
  out << "site";
  for (const auto& id : net.site_ids) out << ',' << id;
  out << '\n';
  for (std::size_t i = 0; i < net.N(); ++i) {
    out << net.site_ids[i];
    for (std::size_t j = 0; j < net.N(); ++j)
      out << ',' << fmt17(net.dist(static_cast<Eigen::Index>(i),
                                   static_cast<Eigen::Index>(j)));
    out << '\n';
  }
}

void save_cutoffs(const CutoffField& cutoffs, const std::filesystem::path& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["u_r"] = cutoffs.u_r;
  j["rows"] = cutoffs.u.rows();
  j["cols"] = cutoffs.u.cols();
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(cutoffs.u.size()));
  for (Eigen::Index t = 0; t < cutoffs.u.rows(); ++t)
    for (Eigen::Index s = 0; s < cutoffs.u.cols(); ++s) flat.push_back(cutoffs.u(t, s));
  j["u"] = flat;
  open_out(path) << j.dump(2) << '\n';
}

CutoffField load_cutoffs(const std::filesystem::path& path) {
  json j = json::parse(open_in(path));
  CutoffField c;
  c.u_r = j.at("u_r");
  Eigen::Index rows = j.at("rows"), cols = j.at("cols");
  std::vector<double> flat = j.at("u");
  if (static_cast<Eigen::Index>(flat.size()) != rows * cols)
    throw DataError("cutoff file: element count mismatch");
  c.u.resize(rows, cols);
  std::size_t i = 0;
  for (Eigen::Index t = 0; t < rows; ++t)
    for (Eigen::Index s = 0; s < cols; ++s) c.u(t, s) = flat[i++];
  return c;
}

void save_fit(const FitResult& fit, const std::filesystem::path& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["theta_hat"] = params_to_json(fit.theta_hat);
  j["loglik"] = fit.loglik;
  json profile = json::array();
  for (const auto& e : fit.nu_profile)
    profile.push_back({{"nu", e.nu},
                       {"gaussian", e.gaussian},
                       {"loglik", e.loglik},
                       {"theta", params_to_json(e.theta)},
                       {"algorithm", e.algorithm},
                       {"converged", e.converged}});
  j["nu_profile"] = profile;
  j["ci_available"] = fit.ci_available;
  json ci = json::object();
  for (const auto& [name, iv] : fit.ci95) ci[name] = {iv.lo, iv.hi};
  j["ci95"] = ci;
  j["trace"] = fit.trace;
  open_out(path) << j.dump(2) << '\n';
}

FitResult load_fit(const std::filesystem::path& path) {
  json j = json::parse(open_in(path));
  FitResult fit;
  fit.theta_hat = params_from_json(j.at("theta_hat"));
  fit.loglik = j.at("loglik");
  for (const auto& e : j.at("nu_profile")) {
    NuProfileEntry entry;
    entry.nu = e.at("nu");
    entry.gaussian = e.at("gaussian");
    entry.loglik = e.at("loglik");
    entry.theta = params_from_json(e.at("theta"));
    entry.algorithm = e.at("algorithm");
    entry.converged = e.at("converged");
    fit.nu_profile.push_back(entry);
  }
  fit.ci_available = j.at("ci_available");
  for (const auto& [name, iv] : j.at("ci95").items())
    fit.ci95[name] = {iv.at(0), iv.at(1)};
  fit.trace = j.at("trace").get<std::vector<std::string>>();
  return fit;
}

void save_ensemble(const SimulationEnsemble& ens, const std::filesystem::path& dir,
                   const std::string& basename) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["mode"] =
      ens.mode == SimMode::unconditional ? "unconditional" : "one_step_conditional";
  manifest["seed"] = ens.seed;
  manifest["params"] = params_to_json(ens.params);
  json files = json::array();
  for (std::size_t k = 0; k < ens.K(); ++k) {
    std::string name = basename + "_" + std::to_string(k) + ".csv";
    const Eigen::MatrixXd& m = ens.replicates[k];
    std::ofstream out = open_out(dir / name);
    out << "t";
    for (Eigen::Index s = 0; s < m.cols(); ++s) out << ",site_" << s + 1;
    out << '\n';
    for (Eigen::Index t = 0; t < m.rows(); ++t) {
      out << t;
      for (Eigen::Index s = 0; s < m.cols(); ++s) out << ',' << fmt17(m(t, s));
      out << '\n';
    }
    files.push_back({{"file", name}, {"substream", k}});
  }
  manifest["replicates"] = files;
  open_out(dir / "manifest.json") << manifest.dump(2) << '\n';
}

SimulationEnsemble load_ensemble(const std::filesystem::path& manifest_path) {
  json manifest = json::parse(open_in(manifest_path));
  SimulationEnsemble ens;
  ens.mode = manifest.at("mode") == "unconditional" ? SimMode::unconditional
                                                    : SimMode::one_step_conditional;
  ens.seed = manifest.at("seed");
  ens.params = params_from_json(manifest.at("params"));
  std::filesystem::path dir = manifest_path.parent_path();
  for (const auto& entry : manifest.at("replicates")) {
    std::ifstream in = open_in(dir / entry.at("file").get<std::string>());
    std::string line;
    std::getline(in, line);
    std::size_t ncols = split_csv(line).size() - 1;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      auto cells = split_csv(line);
      std::vector<double> row;
      for (std::size_t i = 1; i < cells.size(); ++i)
        row.push_back(parse_double(cells[i], line_no));
      rows.push_back(std::move(row));
    }
    Eigen::MatrixXd m(rows.size(), ncols);
    for (std::size_t t = 0; t < rows.size(); ++t)
      for (std::size_t s = 0; s < ncols; ++s)
        m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) = rows[t][s];
    ens.replicates.push_back(std::move(m));
  }
  return ens;
}

namespace {

void save_qq_table(const QQTable& tab, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "prob,observed,median,band_lo,band_hi\n";
  for (std::size_t i = 0; i < tab.probs.size(); ++i)
    out << fmt17(tab.probs[i]) << ',' << fmt17(tab.observed[i]) << ','
        << fmt17(tab.median[i]) << ',' << fmt17(tab.band_lo[i]) << ','
        << fmt17(tab.band_hi[i]) << '\n';
}

json transitions_to_json(const TransitionTable& t) {
  json j;
  j["wet_row_defined"] = t.wet_row_defined;
  j["dry_row_defined"] = t.dry_row_defined;
  if (t.wet_row_defined) {
    j["wet_wet"] = t.wet_wet;
    j["dry_wet"] = t.dry_wet;
  }
  if (t.dry_row_defined) {
    j["wet_dry"] = t.wet_dry;
    j["dry_dry"] = t.dry_dry;
  }
  return j;
}

}  // namespace

void save_report(const EvaluationReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["mrmse_pct"] = report.mrmse_pct;
  j["obs_transitions"] = transitions_to_json(report.obs_transitions);
  j["sim_transitions"] = transitions_to_json(report.sim_transitions);
  j["obs_concurrence"] = report.obs_concurrence;
  j["sim_concurrence"] = report.sim_concurrence;
  j["qq_positive_available"] = report.qq.positive.has_value();
  open_out(dir / "report.json") << j.dump(2) << '\n';

  save_qq_table(report.qq.all, dir / "qq_all.csv");
  if (report.qq.positive) save_qq_table(*report.qq.positive, dir / "qq_positive.csv");

  std::ofstream conc = open_out(dir / "concurrence.csv");
  conc << "wet_sites,observed,simulated\n";
  for (std::size_t i = 0; i < report.obs_concurrence.size(); ++i)
    conc << i << ',' << report.obs_concurrence[i] << ',' << report.sim_concurrence[i]
         << '\n';

  std::ofstream tr = open_out(dir / "transitions.csv");
  tr << "series,wet_wet,dry_wet,wet_dry,dry_dry\n";
  auto row = [&](const char* name, const TransitionTable& t) {
    tr << name << ',' << fmt17(t.wet_wet) << ',' << fmt17(t.dry_wet) << ','
       << fmt17(t.wet_dry) << ',' << fmt17(t.dry_dry) << '\n';
  };
  row("observed", report.obs_transitions);
  row("simulated", report.sim_transitions);
}

void save_prediction(const PredictionBands& pred,
                     const std::vector<std::int64_t>& timestamps,
                     const std::vector<std::string>& sites,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_matrix_csv(pred.mean, timestamps, sites, dir / "mean.csv");
  for (std::size_t i = 0; i < pred.levels.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", pred.levels[i]);
    std::string tag = buf;
    save_matrix_csv(pred.bands[i].first, timestamps, sites,
                    dir / ("band_" + tag + "_lo.csv"));
    save_matrix_csv(pred.bands[i].second, timestamps, sites,
                    dir / ("band_" + tag + "_hi.csv"));
  }
}

}  // namespace swg

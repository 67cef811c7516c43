#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace swg {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// T x N panel of nonnegative rain rates (mm/hr) on a fixed time step.
// Timestamps are seconds since the Unix epoch (UTC).
struct PrecipPanel {
  std::vector<std::int64_t> timestamps;
  std::vector<std::string> sites;
  Eigen::MatrixXd values;  // T x N

  std::size_t T() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t N() const { return static_cast<std::size_t>(values.cols()); }

  void validate() const;
  // day of year (1..365/366) for row t
  int day_of_year(std::size_t t) const;
};

struct GaugeNetwork {
  std::vector<std::string> site_ids;
  std::vector<std::pair<double, double>> coords;  // may be empty if dist supplied
  Eigen::MatrixXd dist;                           // N x N, symmetric, zero diagonal

  std::size_t N() const { return site_ids.size(); }

  static GaugeNetwork from_coords(std::vector<std::string> ids,
                                  std::vector<std::pair<double, double>> xy);
  static GaugeNetwork from_distances(std::vector<std::string> ids,
                                     Eigen::MatrixXd d);
  void validate() const;
  double max_distance() const;
};

}  // namespace swg

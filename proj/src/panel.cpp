#include "swg/panel.hpp"

#include <cmath>
#include <ctime>

namespace swg {

void PrecipPanel::validate() const {
  std::size_t t = T(), n = N();
  if (t == 0 || n == 0) throw DataError("panel: empty");
  if (timestamps.size() != t) throw DataError("panel: timestamp count mismatch");
  if (sites.size() != n) throw DataError("panel: site label count mismatch");
  if (t >= 2) {
    std::int64_t step = timestamps[1] - timestamps[0];
    if (step <= 0) throw DataError("panel: non-increasing timestamps");
    for (std::size_t i = 2; i < t; ++i)
      if (timestamps[i] - timestamps[i - 1] != step)
        throw DataError("panel: irregular time step at row " + std::to_string(i));
  }
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double v = values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (!std::isfinite(v))
        throw DataError("panel: non-finite value at row " + std::to_string(i) +
                        ", site " + sites[j]);
      if (v < 0.0)
        throw DataError("panel: negative value at row " + std::to_string(i) +
                        ", site " + sites[j]);
    }
}

int PrecipPanel::day_of_year(std::size_t t) const {
  std::time_t tt = static_cast<std::time_t>(timestamps.at(t));
  std::tm tm{};
  gmtime_r(&tt, &tm);
  return tm.tm_yday + 1;
}

GaugeNetwork GaugeNetwork::from_coords(std::vector<std::string> ids,
                                       std::vector<std::pair<double, double>> xy) {
  if (ids.size() != xy.size()) throw ConfigError("network: label/coordinate count mismatch");
  GaugeNetwork net;
  net.site_ids = std::move(ids);
  net.coords = std::move(xy);
  Eigen::Index n = static_cast<Eigen::Index>(net.site_ids.size());
  net.dist.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      double dx = net.coords[i].first - net.coords[j].first;
      double dy = net.coords[i].second - net.coords[j].second;
      net.dist(i, j) = std::hypot(dx, dy);
    }
  net.validate();
  return net;
}

GaugeNetwork GaugeNetwork::from_distances(std::vector<std::string> ids,
                                          Eigen::MatrixXd d) {
  GaugeNetwork net;
  net.site_ids = std::move(ids);
  net.dist = std::move(d);
  net.validate();
  return net;
}

void GaugeNetwork::validate() const {
  Eigen::Index n = static_cast<Eigen::Index>(site_ids.size());
  if (n == 0) throw ConfigError("network: no sites");
  if (dist.rows() != n || dist.cols() != n)
    throw ConfigError("network: distance matrix shape mismatch");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (dist(i, i) != 0.0) throw ConfigError("network: nonzero diagonal distance");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!std::isfinite(dist(i, j)) || dist(i, j) < 0.0)
        throw ConfigError("network: invalid distance");
      if (dist(i, j) != dist(j, i))
        throw ConfigError("network: asymmetric distance matrix");
    }
  }
}

double GaugeNetwork::max_distance() const { return dist.maxCoeff(); }

}  // namespace swg

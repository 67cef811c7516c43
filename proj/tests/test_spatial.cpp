#include <doctest.h>

#include <cmath>

#include "swg/rng.hpp"
#include "swg/spatial.hpp"
#include "swg/special.hpp"
#include "test_util.hpp"

using namespace swg;

namespace {

// K1(x) = int_0^inf exp(-x cosh t) cosh t dt, independent of the library path
double k1_oracle(double x) {
  double hi = std::acosh(750.0 / x);
  return oracle::adaptive_simpson(
      [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(t); }, 0.0,
      hi, 1e-14);
}

GaugeNetwork line_network() {
  // max distance 2 between the end sites
  return GaugeNetwork::from_coords({"a", "b", "c"},
                                   {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}});
}

}  // namespace

TEST_CASE("bessel_k1 small-argument limit, known value, monotonicity") {
  CHECK(1e-6 * bessel_k1(1e-6) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(bessel_k1(1.0) == doctest::Approx(0.6019072).epsilon(1e-6));
  CHECK(bessel_k1(2.0) < bessel_k1(1.0));
  CHECK_THROWS_AS(bessel_k1(0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_k1(-1.0), std::domain_error);
}

TEST_CASE("bessel_k1 against the integral-representation oracle") {
  for (double x : {0.05, 0.3, 1.0, 2.5, 7.0, 20.0})
    CHECK(bessel_k1(x) == doctest::Approx(k1_oracle(x)).epsilon(1e-9));
}

TEST_CASE("build_ar_matrix kernel values") {
  GaugeNetwork net = line_network();
  double phi = 0.1, rho = 1.0;
  ARMatrix ar = build_ar_matrix(net, phi, rho);
  for (int i = 0; i < 3; ++i) CHECK(ar.beta(i, i) == phi);
  // d = rho -> phi * K1(1)
  CHECK(ar.beta(0, 1) == doctest::Approx(phi * bessel_k1(1.0)).epsilon(1e-12));
  CHECK(ar.beta(0, 1) == doctest::Approx(phi * 0.6019072).epsilon(1e-6));
  // symmetry, positivity, decay with distance
  CHECK(ar.beta(0, 1) == ar.beta(1, 0));
  CHECK(ar.beta(0, 2) > 0.0);
  CHECK(ar.beta(0, 2) < ar.beta(0, 1));
  CHECK(ar.beta(0, 1) <= phi);

  ARMatrix zero = build_ar_matrix(net, 0.0, rho);
  CHECK(zero.beta.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("off-diagonal beta increases with rho at fixed phi") {
  GaugeNetwork net = line_network();
  ARMatrix a = build_ar_matrix(net, 0.1, 0.5);
  ARMatrix b = build_ar_matrix(net, 0.1, 2.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(b.beta(i, j) > a.beta(i, j));
}

TEST_CASE("check_stationarity arithmetic examples") {
  GaugeNetwork net = line_network();  // N=3, max d=2, bound 1/6
  StationarityCheck fail = check_stationarity(net, 0.2, 1.0);
  CHECK_FALSE(fail.pass);
  CHECK(fail.margin == doctest::Approx(1.0 / 6.0 - 0.2).epsilon(1e-12));
  StationarityCheck ok = check_stationarity(net, 0.05, 1.0);
  CHECK(ok.pass);
  CHECK(ok.margin == doctest::Approx(1.0 / 6.0 - 0.05).epsilon(1e-12));
  CHECK(ok.spectral_radius < 1.0);

  GaugeNetwork degenerate = GaugeNetwork::from_coords(
      {"a", "b"}, {{0.0, 0.0}, {0.0, 0.0}});
  CHECK_THROWS_AS(check_stationarity(degenerate, 0.05, 1.0), ConfigError);
}

TEST_CASE("accepted parameters give spectral radius < 1 on random networks") {
  RngStream rng(314);
  for (int rep = 0; rep < 30; ++rep) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 9.0);
    std::vector<std::string> ids;
    std::vector<std::pair<double, double>> xy;
    for (std::size_t i = 0; i < n; ++i) {
      ids.push_back("s" + std::to_string(i));
      xy.emplace_back(10.0 * rng.uniform(), 10.0 * rng.uniform());
    }
    GaugeNetwork net = GaugeNetwork::from_coords(ids, xy);
    if (net.max_distance() <= 0.0) continue;
    double rho = 0.2 + 5.0 * rng.uniform();
    double bound = 1.0 / (static_cast<double>(n) * net.max_distance());
    double phi = (0.05 + 0.9 * rng.uniform()) * bound * rho;
    StationarityCheck chk = check_stationarity(net, phi, rho);
    REQUIRE(chk.pass);
    CHECK(chk.spectral_radius < 1.0);

    // cross-check Eigen's spectral radius with power iteration
    ARMatrix ar = build_ar_matrix(net, phi, rho);
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m[i][j] = ar.beta(static_cast<int>(i), static_cast<int>(j));
    CHECK(chk.spectral_radius ==
          doctest::Approx(oracle::power_iteration_radius(m)).epsilon(1e-8));
  }
}

#include <doctest.h>

#include <cmath>

#include "swg/distributions.hpp"
#include "test_util.hpp"

using namespace swg;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("t_pdf known values and symmetry") {
  CHECK(t_pdf(0.0, 1.0) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  for (double x : {0.3, 1.7, 4.2})
    for (double nu : {1.0, 3.0, 11.5})
      CHECK(t_pdf(x, nu) == doctest::Approx(t_pdf(-x, nu)).epsilon(1e-15));
  // closed-form gamma evaluation at (1, nu=3)
  double nu = 3.0;
  double expected = std::exp(std::lgamma(2.0) - std::lgamma(1.5)) /
                    std::sqrt(3.0 * kPi) * std::pow(1.0 + 1.0 / 3.0, -2.0);
  CHECK(t_pdf(1.0, nu) == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(t_pdf(0.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(t_pdf(std::nan(""), 3.0), std::domain_error);
}

TEST_CASE("t_cdf median, reflection, quadrature oracle") {
  CHECK(t_cdf(0.0, 7.0) == doctest::Approx(0.5).epsilon(1e-15));
  for (double x : {0.5, 2.0, 6.0})
    for (double nu : {2.5, 5.0, 30.0})
      CHECK(t_cdf(-x, nu) == doctest::Approx(1.0 - t_cdf(x, nu)).epsilon(1e-12));
  double q = 0.5 + oracle::adaptive_simpson([](double x) { return t_pdf(x, 5.0); },
                                            0.0, 2.0, 1e-13);
  CHECK(t_cdf(2.0, 5.0) == doctest::Approx(q).epsilon(1e-10));
  CHECK_THROWS_AS(t_cdf(1.0, 0.0), std::domain_error);
}

TEST_CASE("skewt_pdf reductions and normalization") {
  SkewTParams p{0.4, 1.3, 0.0, 6.0};
  for (double x : {-2.0, 0.0, 1.5})
    CHECK(skewt_pdf(x, p) ==
          doctest::Approx(t_pdf((x - p.xi) / p.omega, p.nu) / p.omega).epsilon(1e-13));

  SkewTParams q{0.0, 1.0, 5.0, 3.0};
  double mass = oracle::adaptive_simpson([&](double x) { return skewt_pdf(x, q); },
                                         -2e4, 2e4, 1e-11);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

  // skew-symmetry: f(-x; -a) = f(x; a) and f(x; a) + f(-x; a) = 2 t(x)
  SkewTParams pa{0.0, 1.0, 3.0, 5.0}, pm{0.0, 1.0, -3.0, 5.0};
  for (double x : {-1.2, 0.7, 2.9}) {
    CHECK(skewt_pdf(-x, pm) == doctest::Approx(skewt_pdf(x, pa)).epsilon(1e-12));
    CHECK(skewt_pdf(x, pa) + skewt_pdf(-x, pa) ==
          doctest::Approx(2.0 * t_pdf(x, 5.0)).epsilon(1e-12));
  }
}

TEST_CASE("skewt_pdf normalization over an (alpha, nu) grid") {
  for (double a : {-5.0, 0.0, 5.0})
    for (double nu : {3.0, 7.0, 20.0}) {
      SkewTParams p{0.0, 1.0, a, nu};
      double lo = nu <= 3.0 ? -2e4 : -500.0;
      double mass = oracle::adaptive_simpson(
          [&](double x) { return skewt_pdf(x, p); }, lo, -lo, 1e-11);
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("skewt_cdf limits and oracle") {
  SkewTParams p{0.0, 1.0, 5.0, 3.0};
  CHECK(skewt_cdf(1e6, p) == doctest::Approx(1.0).epsilon(1e-9));
  SkewTParams sym{0.7, 2.0, 0.0, 8.0};
  CHECK(skewt_cdf(0.7, sym) == doctest::Approx(0.5).epsilon(1e-8));
  double q = oracle::adaptive_simpson([&](double x) { return skewt_pdf(x, p); },
                                      -3000.0, 0.0, 1e-12);
  CHECK(skewt_cdf(0.0, p) == doctest::Approx(q).epsilon(1e-7));
  CHECK(std::fabs(skewt_cdf(0.0, p) - q) < 1e-8);
}

TEST_CASE("scale_skewt closed forms") {
  ScaledSkewT s = scale_skewt(0.0, 4.0);
  CHECK(s.delta == 0.0);
  CHECK(s.xi == 0.0);
  CHECK(s.omega == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

  ScaledSkewT lim = scale_skewt(0.0, 1e6);
  CHECK(lim.omega == doctest::Approx(1.0).epsilon(1e-5));

  ScaledSkewT h = scale_skewt(5.0, 3.0);
  double b3 = 2.0 * std::sqrt(3.0) / kPi;
  double delta = 5.0 / std::sqrt(26.0);
  CHECK(h.b_nu == doctest::Approx(b3).epsilon(1e-12));
  CHECK(h.delta == doctest::Approx(delta).epsilon(1e-12));
  double omega = 1.0 / std::sqrt(3.0 - (b3 * delta) * (b3 * delta));
  CHECK(h.omega == doctest::Approx(omega).epsilon(1e-12));
  CHECK(h.xi == doctest::Approx(-omega * b3 * delta).epsilon(1e-12));

  CHECK_THROWS_AS(scale_skewt(1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(scale_skewt(1.0, 1.0), std::domain_error);
}

TEST_CASE("scaled skew-t has analytic zero mean and unit variance") {
  for (double a : {-2.0, 0.0, 5.0})
    for (double nu : {2.5, 3.0, 12.0}) {
      ScaledSkewT s = scale_skewt(a, nu);
      double mean = s.xi + s.omega * s.b_nu * s.delta;
      double var = s.omega * s.omega *
                   (nu / (nu - 2.0) - (s.b_nu * s.delta) * (s.b_nu * s.delta));
      CHECK(std::fabs(mean) < 1e-10);
      CHECK(var == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("sst Monte Carlo moments") {
  RngStream rng(17);
  auto draws = sample_sst_direct(5.0, 3.0, 1000000, rng);
  double mean = 0.0;
  for (double v : draws) mean += v;
  mean /= static_cast<double>(draws.size());
  double var = 0.0, m4 = 0.0;
  for (double v : draws) {
    double d2 = (v - mean) * (v - mean);
    var += d2;
    m4 += d2 * d2;
  }
  double n = static_cast<double>(draws.size());
  var /= n - 1.0;
  m4 /= n;
  CHECK(std::fabs(mean) < 0.01);
  // nu=3 has infinite kurtosis; judge the variance by its own empirical SE
  double se_var = std::sqrt((m4 - var * var) / n);
  CHECK(std::fabs(var - 1.0) < 4.0 * se_var);

  RngStream rng2(18);
  auto light = sample_sst_direct(5.0, 10.0, 1000000, rng2);
  double lm = 0.0, lv = 0.0;
  for (double v : light) lm += v;
  lm /= n;
  for (double v : light) lv += (v - lm) * (v - lm);
  lv /= n - 1.0;
  CHECK(std::fabs(lm) < 0.01);
  CHECK(lv == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("sst symmetry and median at alpha=0") {
  for (double x : {0.5, 1.5, 3.0})
    CHECK(sst_pdf(x, 0.0, 20.0) == doctest::Approx(sst_pdf(-x, 0.0, 20.0)).epsilon(1e-12));
  CHECK(sst_cdf(0.0, 0.0, 9.0) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("direct sampler determinism and distribution") {
  RngStream a(99), b(99);
  auto d1 = sample_sst_direct(5.0, 3.0, 64, a);
  auto d2 = sample_sst_direct(5.0, 3.0, 64, b);
  CHECK(d1 == d2);

  SstDist dist(5.0, 3.0);
  RngStream rng(7);
  auto draws = sample_sst_direct(5.0, 3.0, 100000, rng);
  double ks = oracle::ks_statistic(draws, [&](double x) { return dist.cdf(x); });
  double crit = 1.628 / std::sqrt(100000.0);  // 1% critical value
  CHECK(ks < crit);
}

TEST_CASE("alpha=0 draws pass a sign test at the 1% level") {
  RngStream rng(21);
  auto draws = sample_sst_direct(0.0, 6.0, 100000, rng);
  double pos = 0.0;
  for (double v : draws) pos += v > 0.0 ? 1.0 : 0.0;
  double n = static_cast<double>(draws.size());
  double z = (pos - 0.5 * n) / std::sqrt(0.25 * n);
  CHECK(std::fabs(z) < 2.576);
}

TEST_CASE("selection sampler matches direct sampler") {
  for (auto [a, nu] : {std::pair{0.0, 20.0}, std::pair{5.0, 3.0}}) {
    RngStream r1(5), r2(6);
    auto d = sample_sst_direct(a, nu, 100000, r1);
    auto s = sample_sst_selection(a, nu, 100000, r2);
    double ks = oracle::ks_two_sample(d, s);
    double crit = 1.628 * std::sqrt(2.0 / 100000.0);
    CHECK(ks < crit);
  }
}

TEST_CASE("selection sampler is marginally t at alpha=0 and deterministic") {
  RngStream rng(3);
  auto s = sample_sst_selection(0.0, 5.0, 100000, rng);
  ScaledSkewT sc = scale_skewt(0.0, 5.0);
  double ks = oracle::ks_statistic(
      s, [&](double x) { return t_cdf((x - sc.xi) / sc.omega, 5.0); });
  CHECK(ks < 1.628 / std::sqrt(100000.0));

  RngStream a(42), b(42);
  CHECK(sample_sst_selection(2.0, 4.0, 32, a) == sample_sst_selection(2.0, 4.0, 32, b));
}

TEST_CASE("cdf/pdf consistency by numerical differentiation") {
  SstDist dist(3.0, 7.0);
  for (int i = 0; i < 50; ++i) {
    double x = -4.0 + 8.0 * i / 49.0;
    double h = 1e-4;
    double deriv = (dist.cdf(x + h) - dist.cdf(x - h)) / (2.0 * h);
    CHECK(deriv == doctest::Approx(dist.pdf(x)).epsilon(1e-5));
  }
}

TEST_CASE("Gaussian limit of the scaled skew-t") {
  SstDist dist(0.0, 1e6);
  for (double x = -6.0; x <= 6.0; x += 0.25)
    CHECK(std::fabs(dist.pdf(x) - normal_pdf(x)) < 1e-4);
}

TEST_CASE("SstDist cdf agrees with adaptive quadrature of the pdf") {
  SstDist dist(5.0, 3.0);
  SkewTParams p = dist.scaled().params();
  for (double x : {-3.0, -0.5, 0.0, 1.0, 4.0, 15.0}) {
    double ref = skewt_cdf(x, p, 1e-12);
    CHECK(std::fabs(dist.cdf(x) - ref) < 1e-10);
  }
  // deep tails keep relative accuracy
  CHECK(dist.cdf(-40.0) == doctest::Approx(skewt_cdf(-40.0, p, 1e-15)).epsilon(1e-4));
}

#include <doctest.h>

#include <cmath>

#include "swg/occurrence.hpp"
#include "swg/rng.hpp"

using namespace swg;

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

PrecipPanel daily_panel(std::size_t t, std::size_t n) {
  PrecipPanel p;
  p.sites.resize(n);
  for (std::size_t s = 0; s < n; ++s) p.sites[s] = "s" + std::to_string(s);
  p.timestamps.resize(t);
  for (std::size_t i = 0; i < t; ++i)
    p.timestamps[i] = 1577836800 + static_cast<std::int64_t>(i) * 86400;
  p.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(t),
                                   static_cast<Eigen::Index>(n));
  return p;
}

OccurrenceModel constant_model(std::size_t n, double p_wet) {
  OccurrenceModel m;
  m.sites.resize(n);
  for (auto& s : m.sites) {
    s.degenerate = true;
    s.clamp_prob = p_wet;
    s.coef = Eigen::VectorXd::Zero(1);
  }
  return m;
}

}  // namespace

TEST_CASE("intercept-only fit recovers the Bernoulli MLE") {
  PrecipPanel p = daily_panel(1000, 1);
  for (std::size_t i = 0; i < 300; ++i)
    p.values(static_cast<Eigen::Index>(i * 3), 0) = 2.0;
  OccurrenceModel m = fit_occurrence(p, 0);
  CHECK_FALSE(m.sites[0].degenerate);
  for (int d : {1, 100, 365})
    CHECK(m.probability(0, d) == doctest::Approx(0.30).epsilon(1e-6));
}

TEST_CASE("all-dry site falls back to a clamped intercept with a warning flag") {
  PrecipPanel p = daily_panel(200, 2);
  p.values.col(1).setConstant(1.5);  // site 1 all wet, site 0 all dry
  OccurrenceModel m = fit_occurrence(p, 1);
  CHECK(m.sites[0].degenerate);
  CHECK(m.probability(0, 50) == doctest::Approx(1e-6));
  CHECK(m.sites[1].degenerate);
  CHECK(m.probability(1, 50) == doctest::Approx(1.0 - 1e-6));
}

TEST_CASE("H=1 harmonic recovery with AIC order selection") {
  const double g0 = -0.3, gs = 0.8, gc = 0.5;
  const std::size_t t = 1095, reps = 100;
  RngStream rng(13);
  int picked_h1 = 0;
  double sum0 = 0.0, sums = 0.0, sumc = 0.0;
  double sq0 = 0.0, sqs = 0.0, sqc = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    PrecipPanel p = daily_panel(t, 1);
    for (std::size_t i = 0; i < t; ++i) {
      double arg = kTwoPi * p.day_of_year(i) / 365.0;
      double eta = g0 + gs * std::sin(arg) + gc * std::cos(arg);
      double prob = 1.0 / (1.0 + std::exp(-eta));
      if (rng.uniform() < prob) p.values(static_cast<Eigen::Index>(i), 0) = 1.0;
    }
    OccurrenceModel m = fit_occurrence(p, 2);
    const SiteOccurrenceFit& f = m.sites[0];
    REQUIRE_FALSE(f.degenerate);
    CHECK(f.order <= 2);
    if (f.order == 1) {
      ++picked_h1;
      sum0 += f.coef(0);
      sums += f.coef(1);
      sumc += f.coef(2);
      sq0 += f.coef(0) * f.coef(0);
      sqs += f.coef(1) * f.coef(1);
      sqc += f.coef(2) * f.coef(2);
    }
  }
  CHECK(picked_h1 >= 90);
  double n = static_cast<double>(picked_h1);
  auto within = [&](double sum, double sq, double truth) {
    double mean = sum / n;
    double sd = std::sqrt((sq - n * mean * mean) / (n - 1.0));
    CHECK(std::fabs(mean - truth) < 3.0 * sd / std::sqrt(n));
  };
  within(sum0, sq0, g0);
  within(sums, sqs, gs);
  within(sumc, sqc, gc);
}

TEST_CASE("AIC trace is reproducible and bounded by H_max") {
  PrecipPanel p = daily_panel(400, 1);
  RngStream rng(5);
  for (std::size_t i = 0; i < 400; ++i)
    if (rng.uniform() < 0.4) p.values(static_cast<Eigen::Index>(i), 0) = 1.0;
  OccurrenceModel a = fit_occurrence(p, 2);
  OccurrenceModel b = fit_occurrence(p, 2);
  CHECK(a.sites[0].order <= 2);
  REQUIRE(a.sites[0].aic_trace.size() == b.sites[0].aic_trace.size());
  for (std::size_t i = 0; i < a.sites[0].aic_trace.size(); ++i) {
    CHECK(a.sites[0].aic_trace[i].first == b.sites[0].aic_trace[i].first);
    CHECK(a.sites[0].aic_trace[i].second == b.sites[0].aic_trace[i].second);
  }
  CHECK(a.sites[0].coef == b.sites[0].coef);
}

TEST_CASE("empirical_quantile type-7 interpolation") {
  std::vector<double> v{4.0, 1.0, 3.0, 2.0};
  CHECK(empirical_quantile(v, 0.5) == doctest::Approx(2.5));
  CHECK(empirical_quantile(v, 0.0) == doctest::Approx(1.0));
  CHECK(empirical_quantile(v, 1.0) == doctest::Approx(4.0));
  CHECK(empirical_quantile(v, 1.0 / 3.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(empirical_quantile({}, 0.5), DataError);
}

TEST_CASE("mostly-dry site clamps its cutoff to the instrument limit") {
  const std::size_t t = 1000;
  PrecipPanel p = daily_panel(t, 1);
  for (std::size_t i = 0; i < 76; ++i)  // 92.4% zeros
    p.values(static_cast<Eigen::Index>(i * 13), 0) = 2.0;
  OccurrenceModel m = fit_occurrence(p, 0);
  CHECK(m.probability(0, 10) == doctest::Approx(0.076).epsilon(1e-6));
  CutoffField cut = estimate_cutoffs(p, m, 1.2);
  CHECK(cut.u.minCoeff() == 1.2);
  CHECK(cut.u.maxCoeff() == 1.2);
}

TEST_CASE("constant sample pins the cutoff at the common value") {
  PrecipPanel p = daily_panel(50, 1);
  p.values.setConstant(3.0);
  CutoffField cut = estimate_cutoffs(p, constant_model(1, 0.5), 1.2);
  CHECK(cut.u.minCoeff() == doctest::Approx(3.0));
  CHECK(cut.u.maxCoeff() == doctest::Approx(3.0));
}

TEST_CASE("cutoff clamp and monotonicity invariants") {
  RngStream rng(77);
  PrecipPanel p = daily_panel(300, 2);
  for (Eigen::Index i = 0; i < 300; ++i)
    for (Eigen::Index s = 0; s < 2; ++s)
      if (rng.uniform() < 0.5) p.values(i, s) = 5.0 * rng.uniform();

  CutoffField lo_wet = estimate_cutoffs(p, constant_model(2, 0.2), 0.7);
  CutoffField hi_wet = estimate_cutoffs(p, constant_model(2, 0.8), 0.7);
  CHECK(lo_wet.u.minCoeff() >= 0.7);
  CHECK(hi_wet.u.minCoeff() >= 0.7);
  // higher wet probability -> lower threshold, cellwise
  for (Eigen::Index i = 0; i < 300; ++i)
    for (Eigen::Index s = 0; s < 2; ++s)
      CHECK(hi_wet.u(i, s) <= lo_wet.u(i, s));

  CHECK_THROWS_AS(estimate_cutoffs(p, constant_model(2, 0.5), 0.0), ConfigError);
  CHECK_THROWS_AS(estimate_cutoffs(p, constant_model(1, 0.5), 1.0), ConfigError);
}

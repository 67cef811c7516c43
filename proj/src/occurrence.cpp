#include "swg/occurrence.hpp"

#include <algorithm>
#include <cmath>

namespace swg {

namespace {

constexpr double kProbClamp = 1e-6;
constexpr double kTwoPi = 6.28318530717958647692;

Eigen::MatrixXd harmonic_design(const std::vector<int>& doy, int order) {
  Eigen::Index t = static_cast<Eigen::Index>(doy.size());
  Eigen::MatrixXd x(t, 1 + 2 * order);
  for (Eigen::Index i = 0; i < t; ++i) {
    x(i, 0) = 1.0;
    for (int j = 1; j <= order; ++j) {
      double arg = kTwoPi * j * doy[static_cast<std::size_t>(i)] / 365.0;
      x(i, 2 * j - 1) = std::sin(arg);
      x(i, 2 * j) = std::cos(arg);
    }
  }
  return x;
}

double logistic_loglik(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& beta) {
  Eigen::VectorXd eta = x * beta;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    // log(p) or log(1-p) without overflow
    double e = eta(i);
    double log1pe = e > 30.0 ? e : std::log1p(std::exp(e));
    ll += y(i) * e - log1pe;
  }
  return ll;
}

// IRLS; returns false on non-convergence or separation blow-up
bool irls(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
          Eigen::VectorXd& beta, double& loglik) {
  beta = Eigen::VectorXd::Zero(x.cols());
  double prev_ll = logistic_loglik(x, y, beta);
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::VectorXd eta = x * beta;
    Eigen::VectorXd mu(eta.size()), w(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      double p = 1.0 / (1.0 + std::exp(-eta(i)));
      mu(i) = p;
      w(i) = std::max(p * (1.0 - p), 1e-12);
    }
    Eigen::MatrixXd xtwx = x.transpose() * w.asDiagonal() * x;
    Eigen::VectorXd rhs = x.transpose() * (y - mu);
    Eigen::VectorXd step = xtwx.ldlt().solve(rhs);
    beta += step;
    if (beta.cwiseAbs().maxCoeff() > 50.0) return false;  // separation
    double ll = logistic_loglik(x, y, beta);
    if (std::fabs(ll - prev_ll) < 1e-10 * (std::fabs(prev_ll) + 1.0)) {
      loglik = ll;
      return true;
    }
    prev_ll = ll;
  }
  return false;
}

}  // namespace

double OccurrenceModel::probability(std::size_t s, int day_of_year) const {
  const SiteOccurrenceFit& fit = sites.at(s);
  if (fit.degenerate) return fit.clamp_prob;
  double eta = fit.coef(0);
  for (int j = 1; j <= fit.order; ++j) {
    double arg = kTwoPi * j * day_of_year / 365.0;
    eta += fit.coef(2 * j - 1) * std::sin(arg) + fit.coef(2 * j) * std::cos(arg);
  }
  double p = 1.0 / (1.0 + std::exp(-eta));
  return std::clamp(p, kProbClamp, 1.0 - kProbClamp);
}

OccurrenceModel fit_occurrence(const PrecipPanel& panel, int h_max) {
  panel.validate();
  if (h_max < 0) throw ConfigError("fit_occurrence: H_max must be >= 0");
  std::size_t t = panel.T(), n = panel.N();
  std::vector<int> doy(t);
  for (std::size_t i = 0; i < t; ++i) doy[i] = panel.day_of_year(i);

  OccurrenceModel model;
  model.sites.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(t));
    double wet = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
      y(static_cast<Eigen::Index>(i)) =
          panel.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s)) > 0.0
              ? 1.0
              : 0.0;
      wet += y(static_cast<Eigen::Index>(i));
    }
    SiteOccurrenceFit& fit = model.sites[s];
    if (wet == 0.0 || wet == static_cast<double>(t)) {
      fit.degenerate = true;
      fit.clamp_prob = wet == 0.0 ? kProbClamp : 1.0 - kProbClamp;
      fit.coef = Eigen::VectorXd::Zero(1);
      continue;
    }
    double best_aic = std::numeric_limits<double>::infinity();
    bool any = false;
    for (int h = 0; h <= h_max; ++h) {
      Eigen::MatrixXd x = harmonic_design(doy, h);
      Eigen::VectorXd beta;
      double ll;
      if (!irls(x, y, beta, ll)) continue;
      double aic = -2.0 * ll + 2.0 * (1 + 2 * h);
      fit.aic_trace.emplace_back(h, aic);
      if (aic < best_aic) {
        best_aic = aic;
        fit.order = h;
        fit.coef = beta;
        any = true;
      }
    }
    if (!any) {
      // all IRLS runs diverged; intercept-only Bernoulli MLE with clamp
      fit.degenerate = true;
      double p = wet / static_cast<double>(t);
      fit.clamp_prob = std::clamp(p, kProbClamp, 1.0 - kProbClamp);
      fit.coef = Eigen::VectorXd::Zero(1);
    }
  }
  return model;
}

double empirical_quantile(std::vector<double> v, double prob) {
  if (v.empty()) throw DataError("empirical_quantile: empty sample");
  prob = std::clamp(prob, 0.0, 1.0);
  std::sort(v.begin(), v.end());
  double h = prob * static_cast<double>(v.size() - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= v.size()) return v.back();
  double frac = h - static_cast<double>(lo);
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

CutoffField estimate_cutoffs(const PrecipPanel& panel, const OccurrenceModel& occ,
                             double u_r) {
  if (!(u_r > 0.0)) throw ConfigError("estimate_cutoffs: u_r must be positive");
  if (occ.sites.size() != panel.N())
    throw ConfigError("estimate_cutoffs: occurrence model does not cover panel sites");
  std::size_t t = panel.T(), n = panel.N();
  CutoffField out;
  out.u_r = u_r;
  out.u.resize(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(n));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<double> sorted(t);
    for (std::size_t i = 0; i < t; ++i)
      sorted[i] = panel.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s));
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < t; ++i) {
      double p_wet = occ.probability(s, panel.day_of_year(i));
      double h = (1.0 - p_wet) * static_cast<double>(t - 1);
      std::size_t lo = static_cast<std::size_t>(std::floor(h));
      double q;
      if (lo + 1 >= t) {
        q = sorted.back();
      } else {
        double frac = h - static_cast<double>(lo);
        q = sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
      }
      out.u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s)) =
          std::max(q, u_r);
    }
  }
  return out;
}

}  // namespace swg

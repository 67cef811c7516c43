#pragma once

#include "swg/panel.hpp"

namespace swg {

// Harmonic logistic model for the wet/dry indicator, one fit per site.
// logit P(wet) = gamma0 + sum_j gamma_sin_j sin(2 pi j d/365)
//                       + gamma_cos_j cos(2 pi j d/365)
struct SiteOccurrenceFit {
  int order = 0;                       // selected H
  Eigen::VectorXd coef;                // 1 + 2*order entries
  std::vector<std::pair<int, double>> aic_trace;  // (H, AIC)
  bool degenerate = false;             // fell back to clamped intercept
  double clamp_prob = 0.0;             // used when degenerate
};

struct OccurrenceModel {
  std::vector<SiteOccurrenceFit> sites;

  // fitted P(wet) for site s on day-of-year d
  double probability(std::size_t s, int day_of_year) const;
};

// T x N censoring thresholds, each >= the instrument limit u_r
struct CutoffField {
  Eigen::MatrixXd u;
  double u_r;
};

OccurrenceModel fit_occurrence(const PrecipPanel& panel, int h_max);

CutoffField estimate_cutoffs(const PrecipPanel& panel, const OccurrenceModel& occ,
                             double u_r);

// linear-interpolation empirical quantile of a sample (type-7 convention)
double empirical_quantile(std::vector<double> sorted_values, double prob);

}  // namespace swg

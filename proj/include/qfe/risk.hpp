#pragma once

#include "qfe/filters.hpp"
#include "qfe/model.hpp"

namespace qfe {

// Exact quadratic risk of the projection estimator, split as
//   E[(Q~ - Q)^2] = a0 + a1 + a2 - a3
// with
//   a0 = (sum theta_i^2 (1 - h_i))^2         squared bias
//   a1 = 2 eps^4 sum h_i^2 sigma_i^4         pure-noise variance
//   a2 = 4 eps^2 sum sigma_i^2 theta_i^2     efficiency term
//   a3 = 4 eps^2 sum (1 - h_i^2) sigma_i^2 theta_i^2
struct RiskDecomposition {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double total = 0.0;
  // total - a2; may be negative.
  double second_order = 0.0;

  // a0 + a1, the worst-case objective the window is tuned against.
  double bias_noise() const { return a0 + a1; }
};

// Q~ = sum_{i <= floor(W)} h_i (Y_i^2 - eps^2 sigma_i^2)
double estimate(const Observations& observations, const FilterSeq& filter);

RiskDecomposition exact_risk(const Signal& signal, const FilterSeq& filter, const Problem& problem);

// bias^2 + 4 eps^2 sum h_i^2 sigma_i^2 theta_i^2 + 2 eps^4 sum h_i^2 sigma_i^4,
// summed independently of exact_risk. Used to cross-check it.
double mse_alternative(const Signal& signal, const FilterSeq& filter, const Problem& problem);

}  // namespace qfe

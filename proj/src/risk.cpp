#include "qfe/risk.hpp"

#include <algorithm>
#include <string>

namespace qfe {

double estimate(const Observations& observations, const FilterSeq& filter) {
  if (observations.values.size() < filter.support()) {
    throw DomainError("estimate: " + std::to_string(observations.values.size()) +
                      " observations for a filter of support " +
                      std::to_string(filter.support()));
  }
  CompensatedSum acc;
  for (std::size_t i = 1; i <= filter.support(); ++i) {
    const double h = filter.at(i);
    if (h == 0.0) continue;
    const double y = observations.values[i - 1];
    acc += h * (y * y - observations.problem.observation_variance(i));
  }
  return acc.value();
}

RiskDecomposition exact_risk(const Signal& signal, const FilterSeq& filter,
                             const Problem& problem) {
  const std::size_t n = std::max(signal.support(), filter.support());
  CompensatedSum bias;
  CompensatedSum noise;
  CompensatedSum efficiency;
  CompensatedSum deficit;
  for (std::size_t i = 1; i <= n; ++i) {
    const double theta2 = signal.at(i) * signal.at(i);
    const double h = filter.at(i);
    const double var = problem.observation_variance(i);
    bias += theta2 * (1.0 - h);
    noise += 2.0 * (h * h) * (var * var);
    const double eff = 4.0 * var * theta2;
    efficiency += eff;
    deficit += (1.0 - h) * (1.0 + h) * eff;
  }
  RiskDecomposition out;
  const double b = bias.value();
  out.a0 = b * b;
  out.a1 = noise.value();
  out.a2 = efficiency.value();
  out.a3 = deficit.value();

  CompensatedSum total;
  total += out.a0;
  total += noise;
  total += efficiency;
  total -= deficit;
  out.total = total.value();

  CompensatedSum second;
  second += out.a0;
  second += noise;
  second -= deficit;
  out.second_order = second.value();
  return out;
}

double mse_alternative(const Signal& signal, const FilterSeq& filter, const Problem& problem) {
  const std::size_t n = std::max(signal.support(), filter.support());
  CompensatedSum bias;
  CompensatedSum signal_var;
  CompensatedSum noise_var;
  for (std::size_t i = 1; i <= n; ++i) {
    const double theta = signal.at(i);
    const double h = filter.at(i);
    const double var = problem.observation_variance(i);
    bias += theta * theta - h * theta * theta;
    signal_var += 4.0 * (h * h) * var * (theta * theta);
    noise_var += 2.0 * (h * var) * (h * var);
  }
  const double b = bias.value();
  CompensatedSum total;
  total += b * b;
  total += signal_var;
  total += noise_var;
  return total.value();
}

}  // namespace qfe

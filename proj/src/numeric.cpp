#include "qfe/numeric.hpp"

#include <algorithm>

namespace qfe {

double log_sum_exp(std::span<const double> logs) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double x : logs) peak = std::max(peak, x);
  if (!std::isfinite(peak)) return peak;
  CompensatedSum acc;
  for (double x : logs) acc += std::exp(x - peak);
  return peak + std::log(acc.value());
}

double relative_difference(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  if (scale == 0.0) return 0.0;
  return std::fabs(a - b) / scale;
}

}  // namespace qfe

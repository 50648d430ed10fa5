#include "qfe/extremal.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace qfe {

ExtremalSignal least_favorable_at(const Ellipsoid& ellipsoid, double gamma, double epsilon,
                                  double window, bool rescale) {
  const Problem problem(gamma, epsilon);
  if (!(window >= 2.0)) {
    throw NumericalError("least-favorable signal is degenerate for window " +
                         std::to_string(window) + " < 2");
  }
  const FilterSeq filter = optimal_filter(ellipsoid, window);
  const double radius = ellipsoid.radius();

  // log of the filter-independent factor of theta*_j^2
  double log_scale = std::log(2.0) + 4.0 * std::log(epsilon) - std::log(radius);
  if (ellipsoid.is_polynomial()) {
    log_scale += 2.0 * ellipsoid.poly().alpha * std::log(window);
  } else {
    const auto& e = ellipsoid.expo();
    log_scale += 2.0 * e.beta * std::pow(window, e.r);
  }

  const std::size_t n = filter.support();
  std::vector<double> log_theta2(n, -std::numeric_limits<double>::infinity());
  std::vector<double> log_terms(n, -std::numeric_limits<double>::infinity());
  for (std::size_t j = 1; j <= n; ++j) {
    const double h = filter.at(j);
    if (h <= 0.0) continue;
    log_theta2[j - 1] = log_scale + 4.0 * gamma * std::log(static_cast<double>(j)) + std::log(h);
    log_terms[j - 1] = ellipsoid.log_weight_sq(j) + log_theta2[j - 1];
  }
  const double log_raw_norm = log_sum_exp(log_terms);
  if (!std::isfinite(log_raw_norm)) {
    throw NumericalError("least-favorable signal has zero or non-finite norm");
  }

  const double shift = rescale ? std::log(radius) - log_raw_norm : 0.0;
  std::vector<double> theta(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    theta[j] = std::exp(0.5 * (log_theta2[j] + shift));
  }
  // Trailing zeros (h = 0 at an integer window) are not part of the support.
  while (!theta.empty() && theta.back() == 0.0) theta.pop_back();

  ExtremalSignal out;
  out.signal = Signal(std::move(theta));
  out.rescaled = rescale;
  out.raw_norm = std::exp(log_raw_norm);
  out.window = window;
  return out;
}

ExtremalSignal least_favorable(const Ellipsoid& ellipsoid, double gamma, double epsilon,
                               bool rescale) {
  const WindowSolution w = optimal_window(ellipsoid, gamma, epsilon);
  return least_favorable_at(ellipsoid, gamma, epsilon, w.window, rescale);
}

ExtremalSignal least_favorable_poly(double alpha, double gamma, double radius, double epsilon,
                                    bool rescale) {
  return least_favorable(Ellipsoid::polynomial(alpha, radius), gamma, epsilon, rescale);
}

ExtremalSignal least_favorable_exp(double beta, double r, double gamma, double radius,
                                   double epsilon, bool rescale) {
  return least_favorable(Ellipsoid::exponential(beta, r, radius), gamma, epsilon, rescale);
}

}  // namespace qfe

#include "qfe/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qfe {

namespace {

constexpr double kLogResidualTol = 1e-10;
constexpr int kMaxBisections = 200;

void require_window(double window) {
  require(std::isfinite(window) && window >= 1.0, "window must be >= 1");
}

void require_small_epsilon(double epsilon) {
  require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon < 1.0,
          "epsilon must lie in (0, 1) for window formulas");
}

}  // namespace

FilterSeq::FilterSeq(std::vector<double> weights, double window)
    : weights_(std::move(weights)), window_(window) {}

std::size_t window_cutoff(double window) {
  if (!(window >= 1.0)) return 1;
  return static_cast<std::size_t>(std::floor(window));
}

FilterSeq poly_filter(double alpha, double window) {
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be > 0");
  require_window(window);
  const std::size_t n = window_cutoff(window);
  std::vector<double> h(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = static_cast<double>(i) / window;
    h[i - 1] = std::max(0.0, 1.0 - std::pow(x, 2.0 * alpha));
  }
  return FilterSeq(std::move(h), window);
}

FilterSeq exp_filter(double beta, double r, double window) {
  require(std::isfinite(beta) && beta > 0.0, "beta must be > 0");
  require(std::isfinite(r) && r > 0.0 && r <= 2.0, "r must lie in (0, 2]");
  require_window(window);
  const std::size_t n = window_cutoff(window);
  const double top = std::pow(window, r);
  std::vector<double> h(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double gap = std::pow(static_cast<double>(i), r) - top;
    h[i - 1] = std::max(0.0, -std::expm1(2.0 * beta * gap));
  }
  return FilterSeq(std::move(h), window);
}

FilterSeq optimal_filter(const Ellipsoid& ellipsoid, double window) {
  if (ellipsoid.is_polynomial()) return poly_filter(ellipsoid.poly().alpha, window);
  const auto& e = ellipsoid.expo();
  return exp_filter(e.beta, e.r, window);
}

WindowSolution poly_window(double alpha, double gamma, double radius, double epsilon) {
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be > 0");
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be >= 0");
  require(std::isfinite(radius) && radius > 0.0, "L must be > 0");
  require_small_epsilon(epsilon);
  const double d = 4.0 * alpha + 4.0 * gamma + 1.0;
  const double base = radius * radius * d * (4.0 * gamma + 2.0 * alpha + 1.0) / (4.0 * alpha);
  // Exponentiate once in log space; eps^(-4/d) alone can be large.
  const double log_w = (std::log(base) - 4.0 * std::log(epsilon)) / d;
  WindowSolution out;
  out.window = std::exp(log_w);
  if (!(out.window >= 1.0)) {
    out.window = 1.0;
    out.clamped = true;
  }
  return out;
}

double constant_c(double beta, double r, double gamma, double radius) {
  require(std::isfinite(beta) && beta > 0.0, "beta must be > 0");
  require(std::isfinite(r) && r > 0.0 && r <= 2.0, "r must lie in (0, 2]");
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be >= 0");
  require(std::isfinite(radius) && radius > 0.0, "L must be > 0");
  const double l2 = radius * radius;
  if (r < 1.0) return 2.0 * beta * r * l2;
  // (e^{4b} - 1) / (2 e^{2b}) = sinh(2b)
  if (r == 1.0) return l2 * std::sinh(2.0 * beta);
  if (r < 2.0) return l2 / 2.0;
  return l2 / (2.0 * std::exp(2.0 * beta));
}

WindowSolution exp_window(double beta, double r, double gamma, double radius, double epsilon) {
  require_small_epsilon(epsilon);
  const double c = constant_c(beta, r, gamma, radius);
  const double power = 4.0 * gamma + std::max(0.0, 1.0 - r);
  const double target = std::log(c) - 4.0 * std::log(epsilon);

  auto log_gap = [&](double w) {
    double lhs = power * std::log(w) + 4.0 * beta * std::pow(w, r);
    if (r > 1.0) lhs -= 2.0 * beta * r * std::pow(w, r - 1.0);
    return lhs - target;
  };

  if (log_gap(1.0) > 0.0) {
    throw NumericalError("epsilon too large for this class: window equation has no root W >= 1");
  }

  // Bracket by doubling. For r > 1 the left side is only eventually
  // increasing, so the sign change is trusted once it has risen over three
  // consecutive doublings.
  double lo = 1.0;
  double hi = 1.0;
  double previous = log_gap(1.0);
  int rising = 0;
  bool bracketed = false;
  for (int k = 0; k < 64; ++k) {
    hi *= 2.0;
    const double g = log_gap(hi);
    rising = (g > previous) ? rising + 1 : 0;
    previous = g;
    if (g <= 0.0) {
      lo = hi;
    } else if (r <= 1.0 || rising >= 3) {
      bracketed = true;
      break;
    }
  }
  if (!bracketed) throw NumericalError("exp_window: failed to bracket the window equation");

  double best = lo;
  double best_gap = std::fabs(log_gap(lo));
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g = log_gap(mid);
    if (std::fabs(g) < best_gap) {
      best = mid;
      best_gap = std::fabs(g);
    }
    if (g <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (best_gap <= 1e-14) break;
  }
  if (std::fabs(log_gap(hi)) < best_gap) {
    best = hi;
    best_gap = std::fabs(log_gap(hi));
  }
  if (!(best_gap <= kLogResidualTol)) {
    throw NumericalError("exp_window: log residual " + std::to_string(best_gap) +
                         " above tolerance");
  }
  WindowSolution out;
  out.window = best;
  out.residual = best_gap;
  out.constant_c = c;
  return out;
}

WindowSolution optimal_window(const Ellipsoid& ellipsoid, double gamma, double epsilon) {
  if (ellipsoid.is_polynomial()) {
    const auto& p = ellipsoid.poly();
    return poly_window(p.alpha, gamma, p.radius, epsilon);
  }
  const auto& e = ellipsoid.expo();
  return exp_window(e.beta, e.r, gamma, e.radius, epsilon);
}

}  // namespace qfe

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qfe/model.hpp"

namespace qfe {

// Shrinkage weights h_1..h_floor(W), nonincreasing and in [0, 1]; h_i = 0
// past the stored support. The real-valued window W is kept alongside.
class FilterSeq {
 public:
  FilterSeq(std::vector<double> weights, double window);

  // A filter that is identically zero.
  static FilterSeq zero() { return FilterSeq({}, 0.0); }

  std::span<const double> weights() const { return weights_; }
  double window() const { return window_; }
  std::size_t support() const { return weights_.size(); }

  double at(std::size_t i) const {
    return (i >= 1 && i <= weights_.size()) ? weights_[i - 1] : 0.0;
  }

 private:
  std::vector<double> weights_;
  double window_;
};

// floor(W) clamped below at 1; the last index a filter with window W can touch.
std::size_t window_cutoff(double window);

// h_i = (1 - (i/W)^(2 alpha))_+
FilterSeq poly_filter(double alpha, double window);

// h_i = (1 - exp(2 beta (i^r - W^r)))_+
FilterSeq exp_filter(double beta, double r, double window);

// The filter of the family matching `ellipsoid`.
FilterSeq optimal_filter(const Ellipsoid& ellipsoid, double window);

struct WindowSolution {
  double window = 1.0;
  // |log LHS - log RHS| of the defining equation at `window`; 0 for the
  // closed form.
  double residual = 0.0;
  // c(beta, r, gamma, L), exponential class only.
  std::optional<double> constant_c;
  // Set when the closed-form window fell below 1 and was raised to 1.
  bool clamped = false;
};

// Real-valued (un-floored) closed-form window for a_i = i^alpha:
// (L^2 (4g+4a+1)(4g+2a+1) / (4a))^(1/(4a+4g+1)) * eps^(-4/(4a+4g+1)).
WindowSolution poly_window(double alpha, double gamma, double radius, double epsilon);

// Right-hand-side constant of the exponential window equation; piecewise in r.
double constant_c(double beta, double r, double gamma, double radius);

// Root W >= 1 of
//   W^(4g + (1-r)_+) exp(4 beta W^r - 2 beta r W^(r-1) [r > 1]) = c eps^(-4),
// found by bracketing and bisection on the log of both sides. Throws
// NumericalError when the left side at W = 1 already exceeds the right side.
WindowSolution exp_window(double beta, double r, double gamma, double radius, double epsilon);

WindowSolution optimal_window(const Ellipsoid& ellipsoid, double gamma, double epsilon);

}  // namespace qfe

#pragma once

// Least-favorable signals on the ellipsoid boundary. For the optimal filter h
// with window W the stationary signal satisfies
//   theta*_j^2  proportional to  sigma_j^4 h_j,
// which for a_i = i^alpha reads 2 eps^4 sigma_j^4 W^(2 alpha) / L (1 - (j/W)^(2 alpha))_+
// and for a_i = exp(beta i^r) reads (2 eps^4 sigma_j^4 / L)(e^(2 beta W^r) - e^(2 beta j^r))_+.
// The raw formula lies on the boundary only asymptotically, so by default
// the vector is rescaled by one positive factor to land exactly on it.

#include "qfe/filters.hpp"
#include "qfe/model.hpp"

namespace qfe {

struct ExtremalSignal {
  Signal signal;
  bool rescaled = false;
  // ellipsoid norm of the raw formula, before any rescaling
  double raw_norm = 0.0;
  // real window the construction used
  double window = 0.0;
};

ExtremalSignal least_favorable_poly(double alpha, double gamma, double radius, double epsilon,
                                    bool rescale = true);

ExtremalSignal least_favorable_exp(double beta, double r, double gamma, double radius,
                                   double epsilon, bool rescale = true);

// Same construction for the ellipsoid's family at an explicit window W >= 2.
ExtremalSignal least_favorable_at(const Ellipsoid& ellipsoid, double gamma, double epsilon,
                                  double window, bool rescale = true);

// Dispatches on the family with the optimal window.
ExtremalSignal least_favorable(const Ellipsoid& ellipsoid, double gamma, double epsilon,
                               bool rescale = true);

}  // namespace qfe

#pragma once

// Closed-form rates and constants for the worst-case risk, and the two
// asymptotic expansions (an integral and a sum of x^a e^(b x^s)) that the
// exponential-class window relies on, each paired with a direct evaluation.

#include <cstdint>

#include "qfe/model.hpp"
#include "qfe/numeric.hpp"

namespace qfe {

struct RateBound {
  double rate_exponent = 0.0;
  double constant = 0.0;

  double value_at(double epsilon) const { return constant * std::pow(epsilon, rate_exponent); }
};

// 16 alpha / (4 alpha + 4 gamma + 1)
double rate_exponent(double alpha, double gamma);

// alpha > gamma + 1/4: parametric rate, the efficiency term dominates.
bool is_regular(double alpha, double gamma);

// 4 alpha / ((4 gamma + 4 alpha + 1)(4 gamma + 2 alpha + 1))
double constant_B(double alpha, double gamma);

// Nonparametric risk constant in its product-of-powers form.
double constant_C(double alpha, double gamma, double radius);

// Same constant through B: (L^(2(4g+1)) B^(4a))^(1/(4g+4a+1)) (4g+4a+1)/(4g+1).
double constant_C_via_B(double alpha, double gamma, double radius);

RateBound nonparam_bound(double alpha, double gamma, double radius);

// C(alpha, gamma, L) eps^(16 alpha / (4 alpha + 4 gamma + 1)), eps in (0, 1].
double nonparam_rate(double alpha, double gamma, double radius, double epsilon);

// 2 eps^4 / (4 gamma + 1) (log(1/eps) / beta)^((4 gamma + 1) / r), eps in (0, 1/e).
double second_order_bound_exp(double beta, double r, double gamma, double epsilon);

// 4 eps^2 sum sigma_i^2 theta_i^2
double efficiency_term(const Signal& signal, const Problem& problem);

// v^(a-s+1) e^(b v^s) / (b s)
LogScalar lemma_integral_asymptote(double a, double b, double s, double v);
// int_0^v x^a e^(b x^s) dx by adaptive Gauss-Kronrod quadrature, relative
// accuracy 1e-10 or better.
LogScalar lemma_integral_exact(double a, double b, double s, double v);

// Branch value of the expansion of sum_{i=1}^N i^a e^(b i^r):
//   r > 1:  N^a e^(b N^r)
//   r < 1:  N^(a+1-r) e^(b N^r) / (b r)
//   r = 1:  N^a e^(b (N+1)) / (e^b - 1)
LogScalar lemma_sum_asymptote(double a, double b, double r, std::uint64_t n);
// Direct compensated sum, scaled by its largest term.
LogScalar lemma_sum_exact(double a, double b, double r, std::uint64_t n);

}  // namespace qfe

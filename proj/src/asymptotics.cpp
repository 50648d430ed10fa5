#include "qfe/asymptotics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace qfe {

namespace {

void require_alpha_gamma(double alpha, double gamma) {
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be > 0");
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be >= 0");
}

}  // namespace

double rate_exponent(double alpha, double gamma) {
  require_alpha_gamma(alpha, gamma);
  return 16.0 * alpha / (4.0 * alpha + 4.0 * gamma + 1.0);
}

bool is_regular(double alpha, double gamma) {
  require_alpha_gamma(alpha, gamma);
  return alpha > gamma + 0.25;
}

double constant_B(double alpha, double gamma) {
  require_alpha_gamma(alpha, gamma);
  return 4.0 * alpha / ((4.0 * gamma + 4.0 * alpha + 1.0) * (4.0 * gamma + 2.0 * alpha + 1.0));
}

double constant_C(double alpha, double gamma, double radius) {
  require_alpha_gamma(alpha, gamma);
  require(std::isfinite(radius) && radius > 0.0, "L must be > 0");
  const double d = 4.0 * alpha + 4.0 * gamma + 1.0;
  const double g = 4.0 * gamma + 1.0;
  const double log_c = 2.0 * g / d * std::log(radius) - std::log(g) -
                       4.0 * alpha / d * std::log((2.0 * alpha + g) / (4.0 * alpha)) +
                       g / d * std::log(d);
  return std::exp(log_c);
}

double constant_C_via_B(double alpha, double gamma, double radius) {
  require(std::isfinite(radius) && radius > 0.0, "L must be > 0");
  const double b = constant_B(alpha, gamma);
  const double d = 4.0 * alpha + 4.0 * gamma + 1.0;
  const double g = 4.0 * gamma + 1.0;
  return std::pow(std::pow(radius, 2.0 * g) * std::pow(b, 4.0 * alpha), 1.0 / d) * d / g;
}

RateBound nonparam_bound(double alpha, double gamma, double radius) {
  return {rate_exponent(alpha, gamma), constant_C(alpha, gamma, radius)};
}

double nonparam_rate(double alpha, double gamma, double radius, double epsilon) {
  require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon <= 1.0,
          "epsilon must lie in (0, 1]");
  return nonparam_bound(alpha, gamma, radius).value_at(epsilon);
}

double second_order_bound_exp(double beta, double r, double gamma, double epsilon) {
  require(std::isfinite(beta) && beta > 0.0, "beta must be > 0");
  require(std::isfinite(r) && r > 0.0 && r <= 2.0, "r must lie in (0, 2]");
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be >= 0");
  require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon < std::exp(-1.0),
          "epsilon must lie in (0, 1/e)");
  const double g = 4.0 * gamma + 1.0;
  const double log_factor = std::log(-std::log(epsilon) / beta);
  return std::exp(std::log(2.0) + 4.0 * std::log(epsilon) - std::log(g) + g / r * log_factor);
}

double efficiency_term(const Signal& signal, const Problem& problem) {
  CompensatedSum acc;
  for (std::size_t i = 1; i <= signal.support(); ++i) {
    const double theta = signal.at(i);
    acc += 4.0 * problem.observation_variance(i) * (theta * theta);
  }
  return acc.value();
}

namespace {

void require_lemma(double a, double b, double s) {
  require(std::isfinite(a) && std::isfinite(b) && std::isfinite(s), "lemma parameters must be finite");
  require(b > 0.0 && s > 0.0, "lemma requires b > 0 and a positive exponent");
  require(a >= 0.0, "lemma requires a >= 0");
}

}  // namespace

LogScalar lemma_integral_asymptote(double a, double b, double s, double v) {
  require_lemma(a, b, s);
  require(a > 0.0, "integral expansion requires a > 0");
  require(std::isfinite(v) && v > 0.0, "v must be > 0");
  return {(a - s + 1.0) * std::log(v) + b * std::pow(v, s) - std::log(b * s)};
}

LogScalar lemma_integral_exact(double a, double b, double s, double v) {
  require_lemma(a, b, s);
  require(a > 0.0, "integral expansion requires a > 0");
  require(std::isfinite(v) && v > 0.0, "v must be > 0");
  const double peak = b * std::pow(v, s);
  auto integrand = [&](double x) {
    if (x <= 0.0) return 0.0;
    return std::exp(a * std::log(x) + b * std::pow(x, s) - peak);
  };
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  const double scaled = gauss_kronrod<double, 31>::integrate(integrand, 0.0, v, 30, 1e-13, &error);
  if (!(scaled > 0.0)) throw NumericalError("lemma_integral_exact: quadrature failed");
  return {std::log(scaled) + peak};
}

LogScalar lemma_sum_asymptote(double a, double b, double r, std::uint64_t n) {
  require_lemma(a, b, r);
  require(n >= 1, "N must be >= 1");
  const double x = static_cast<double>(n);
  const double lx = std::log(x);
  if (r > 1.0) return {a * lx + b * std::pow(x, r)};
  if (r < 1.0) return {(a + 1.0 - r) * lx + b * std::pow(x, r) - std::log(b * r)};
  return {a * lx + b * (x + 1.0) - std::log(std::expm1(b))};
}

LogScalar lemma_sum_exact(double a, double b, double r, std::uint64_t n) {
  require_lemma(a, b, r);
  require(n >= 1, "N must be >= 1");
  // Terms increase in i, so the last one is the largest.
  const double peak = a * std::log(static_cast<double>(n)) + b * std::pow(static_cast<double>(n), r);
  CompensatedSum acc;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const double x = static_cast<double>(i);
    acc += std::exp(a * std::log(x) + b * std::pow(x, r) - peak);
  }
  return {std::log(acc.value()) + peak};
}

}  // namespace qfe

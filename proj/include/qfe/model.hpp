#pragma once

// Gaussian sequence model Y_i = theta_i + eps * xi_i with Var(xi_i) = i^(2 gamma).
//
// Indices are 1-based throughout the public API to match the model; storage
// is 0-based. Sequences are finitely supported and every coefficient past the
// stored support is exactly zero.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "qfe/numeric.hpp"

namespace qfe {

class Problem {
 public:
  // gamma >= 0, epsilon > 0. epsilon >= 1 is accepted; asymptotic routines
  // reject it themselves.
  Problem(double gamma, double epsilon);

  double gamma() const { return gamma_; }
  double epsilon() const { return epsilon_; }

  // sigma_i = i^gamma
  double noise_sd(std::size_t i) const;
  // eps^2 sigma_i^2, the variance of Y_i
  double observation_variance(std::size_t i) const;

 private:
  double gamma_;
  double epsilon_;
};

class Signal {
 public:
  Signal() = default;
  explicit Signal(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  std::span<const double> coeffs() const { return coeffs_; }
  std::size_t support() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  // theta_i for i >= 1; zero beyond the support.
  double at(std::size_t i) const {
    return (i >= 1 && i <= coeffs_.size()) ? coeffs_[i - 1] : 0.0;
  }

  Signal scaled(double factor) const;

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<double> coeffs_;
};

struct PolynomialClass {
  double alpha;
  double radius;  // L
};

struct ExponentialClass {
  double beta;
  double r;
  double radius;  // L
};

// { theta : sum a_i^2 theta_i^2 <= L } with a_i = i^alpha or exp(beta i^r).
class Ellipsoid {
 public:
  static Ellipsoid polynomial(double alpha, double radius);
  static Ellipsoid exponential(double beta, double r, double radius);

  bool is_polynomial() const { return std::holds_alternative<PolynomialClass>(kind_); }
  const PolynomialClass& poly() const { return std::get<PolynomialClass>(kind_); }
  const ExponentialClass& expo() const { return std::get<ExponentialClass>(kind_); }
  double radius() const;

  // log(a_i^2); a_1 = 1 for both families.
  double log_weight_sq(std::size_t i) const;

 private:
  explicit Ellipsoid(std::variant<PolynomialClass, ExponentialClass> kind)
      : kind_(kind) {}
  std::variant<PolynomialClass, ExponentialClass> kind_;
};

struct Observations {
  std::vector<double> values;
  Problem problem;
  std::uint64_t seed;
};

// Y_i = theta_i + eps * i^gamma * Z_i, Z_i iid N(0,1) drawn from a
// std::mt19937_64 seeded with `seed`. count must cover the signal support.
Observations sample_observations(const Signal& signal, const Problem& problem,
                                 std::size_t count, std::uint64_t seed);

double quadratic_functional(const Signal& signal);

// sum a_i^2 theta_i^2 over the support. A term or sum that overflows
// saturates to +inf and sets `saturated`.
CheckedValue ellipsoid_norm(const Signal& signal, const Ellipsoid& ellipsoid);

bool contains(const Ellipsoid& ellipsoid, const Signal& signal);

// One coefficient per line; a non-numeric first line is taken as a header.
Signal load_signal_csv(const std::filesystem::path& path);

}  // namespace qfe

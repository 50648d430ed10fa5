#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace qfe {

// Invalid parameters or configuration. The CLI maps this to exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that cannot complete in floating point (no root, overflow,
// degenerate construction). The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

// Neumaier's variant of Kahan summation. Terms are added in call order.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator-=(double x) { return *this += -x; }

  // Adds the running sum and the carried error of another accumulator
  // separately, so that near-cancelling totals keep their low-order bits.
  CompensatedSum& operator+=(const CompensatedSum& other) {
    *this += other.sum_;
    *this += other.comp_;
    return *this;
  }

  CompensatedSum& operator-=(const CompensatedSum& other) {
    *this += -other.sum_;
    *this += -other.comp_;
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Largest x with exp(x) finite in double precision.
inline constexpr double kMaxLogDouble = 709.782712893384;

// A nonnegative magnitude carried as its natural logarithm, so products of
// huge exponentials and small powers can be formed without overflow.
// value() saturates to +infinity; saturated() reports that it did.
struct LogScalar {
  double log_value = -std::numeric_limits<double>::infinity();

  double value() const { return std::exp(log_value); }
  bool saturated() const { return log_value > kMaxLogDouble; }

  friend double ratio(const LogScalar& num, const LogScalar& den) {
    return std::exp(num.log_value - den.log_value);
  }
};

// A plain value that may have overflowed while being accumulated.
struct CheckedValue {
  double value = 0.0;
  bool saturated = false;
};

// log(sum_k exp(x_k)) with the maximum factored out. Empty input or all
// -inf gives -inf.
double log_sum_exp(std::span<const double> logs);

// Relative difference |a - b| / max(|a|, |b|), zero when both are zero.
double relative_difference(double a, double b);

}  // namespace qfe

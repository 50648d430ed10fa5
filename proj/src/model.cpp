#include "qfe/model.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <string>

namespace qfe {

Problem::Problem(double gamma, double epsilon) : gamma_(gamma), epsilon_(epsilon) {
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be finite and >= 0");
  require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be finite and > 0");
}

double Problem::noise_sd(std::size_t i) const {
  return std::pow(static_cast<double>(i), gamma_);
}

double Problem::observation_variance(std::size_t i) const {
  const double s = epsilon_ * noise_sd(i);
  return s * s;
}

Signal Signal::scaled(double factor) const {
  std::vector<double> out(coeffs_);
  for (double& c : out) c *= factor;
  return Signal(std::move(out));
}

Ellipsoid Ellipsoid::polynomial(double alpha, double radius) {
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be > 0");
  require(std::isfinite(radius) && radius > 0.0, "L must be > 0");
  return Ellipsoid(PolynomialClass{alpha, radius});
}

Ellipsoid Ellipsoid::exponential(double beta, double r, double radius) {
  require(std::isfinite(beta) && beta > 0.0, "beta must be > 0");
  require(std::isfinite(r) && r > 0.0 && r <= 2.0, "r must lie in (0, 2]");
  require(std::isfinite(radius) && radius > 0.0, "L must be > 0");
  return Ellipsoid(ExponentialClass{beta, r, radius});
}

double Ellipsoid::radius() const {
  return is_polynomial() ? poly().radius : expo().radius;
}

double Ellipsoid::log_weight_sq(std::size_t i) const {
  const double x = static_cast<double>(i);
  if (is_polynomial()) return 2.0 * poly().alpha * std::log(x);
  return 2.0 * expo().beta * std::pow(x, expo().r);
}

Observations sample_observations(const Signal& signal, const Problem& problem,
                                 std::size_t count, std::uint64_t seed) {
  if (count < signal.support()) {
    throw DomainError("observation count " + std::to_string(count) +
                      " truncates a signal of support " +
                      std::to_string(signal.support()));
  }
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(count);
  for (std::size_t i = 1; i <= count; ++i) {
    const double noise = problem.epsilon() * problem.noise_sd(i) * normal(engine);
    values[i - 1] = signal.at(i) + noise;
  }
  return Observations{std::move(values), problem, seed};
}

double quadratic_functional(const Signal& signal) {
  CompensatedSum acc;
  for (double c : signal.coeffs()) acc += c * c;
  return acc.value();
}

CheckedValue ellipsoid_norm(const Signal& signal, const Ellipsoid& ellipsoid) {
  CompensatedSum acc;
  bool saturated = false;
  for (std::size_t i = 1; i <= signal.support(); ++i) {
    const double c = signal.at(i);
    if (c == 0.0) continue;
    const double term = std::exp(ellipsoid.log_weight_sq(i) + 2.0 * std::log(std::fabs(c)));
    if (std::isinf(term)) {
      saturated = true;
      continue;
    }
    acc += term;
  }
  const double total = acc.value();
  if (saturated || std::isinf(total)) {
    return {std::numeric_limits<double>::infinity(), true};
  }
  return {total, false};
}

bool contains(const Ellipsoid& ellipsoid, const Signal& signal) {
  const CheckedValue norm = ellipsoid_norm(signal, ellipsoid);
  return !norm.saturated && norm.value <= ellipsoid.radius();
}

namespace {

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r' ||
                           text.back() == ',')) {
    text.remove_suffix(1);
  }
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Signal load_signal_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open signal file " + path.string());
  std::vector<double> coeffs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    double value = 0.0;
    if (!parse_double(line, value)) {
      if (line_no == 1) continue;  // header
      throw DomainError(path.string() + ":" + std::to_string(line_no) +
                        ": not a number: " + line);
    }
    coeffs.push_back(value);
  }
  return Signal(std::move(coeffs));
}

}  // namespace qfe

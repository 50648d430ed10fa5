#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "qfe/model.hpp"

using namespace qfe;

TEST_CASE("Problem validates gamma and epsilon") {
  CHECK_THROWS_AS(Problem(-0.1, 0.5), DomainError);
  CHECK_THROWS_AS(Problem(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(Problem(1.0, -1.0), DomainError);
  CHECK_NOTHROW(Problem(0.0, 2.0));  // eps >= 1 is allowed here

  const Problem p(1.5, 0.1);
  CHECK(p.noise_sd(1) == 1.0);
  CHECK(p.noise_sd(4) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(p.observation_variance(4) == doctest::Approx(0.64).epsilon(1e-14));
}

TEST_CASE("quadratic_functional") {
  CHECK(quadratic_functional(Signal{}) == 0.0);
  CHECK(quadratic_functional(Signal({3.0, 4.0})) == 25.0);
  CHECK(quadratic_functional(Signal(std::vector<double>(17, 1.0))) == 17.0);
}

TEST_CASE("ellipsoid_norm") {
  const auto poly = Ellipsoid::polynomial(2.0, 1.0);
  const auto expo = Ellipsoid::exponential(1.0, 1.0, 10.0);

  CHECK(ellipsoid_norm(Signal{}, poly).value == 0.0);
  CHECK(ellipsoid_norm(Signal{}, expo).value == 0.0);
  CHECK(ellipsoid_norm(Signal({1.0}), poly).value == 1.0);
  CHECK(contains(poly, Signal({1.0})));
  // a_i = exp(beta i^r): a_2^2 = e^4 for beta = r = 1.
  CHECK(ellipsoid_norm(Signal({0.0, 1.0}), expo).value ==
        doctest::Approx(std::exp(4.0)).epsilon(1e-15));
  CHECK(ellipsoid_norm(Signal({0.0, 1.0}), expo).value == doctest::Approx(54.598150).epsilon(1e-7));
  CHECK_FALSE(contains(expo, Signal({0.0, 1.0})));

  SUBCASE("one-point signals") {
    for (double c : {0.3, -2.0, 7.5}) {
      CHECK(ellipsoid_norm(Signal({c}), poly).value == doctest::Approx(c * c).epsilon(1e-15));
      CHECK(ellipsoid_norm(Signal({c}), expo).value ==
            doctest::Approx(std::exp(2.0) * c * c).epsilon(1e-15));
    }
  }

  SUBCASE("scaling by t scales the norm by t^2") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> c(1 + trial % 9);
      for (double& x : c) x = u(rng);
      const Signal s(c);
      const double t = 0.1 + 3.0 * std::fabs(u(rng));
      for (const auto& e : {poly, Ellipsoid::exponential(0.3, 1.5, 1.0)}) {
        CHECK(ellipsoid_norm(s.scaled(t), e).value ==
              doctest::Approx(t * t * ellipsoid_norm(s, e).value).epsilon(1e-13));
      }
    }
  }

  SUBCASE("overflow saturates and is reported") {
    std::vector<double> c(400, 0.0);
    c.back() = 1.0;
    const auto big = Ellipsoid::exponential(2.0, 1.0, 1.0);  // exp(4 * 400) overflows
    const CheckedValue v = ellipsoid_norm(Signal(c), big);
    CHECK(v.saturated);
    CHECK(std::isinf(v.value));
    CHECK_FALSE(contains(big, Signal(c)));
  }
}

TEST_CASE("Ellipsoid rejects invalid parameters") {
  CHECK_THROWS_AS(Ellipsoid::polynomial(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(Ellipsoid::polynomial(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(Ellipsoid::exponential(1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(Ellipsoid::exponential(1.0, 2.5, 1.0), DomainError);
  CHECK_NOTHROW(Ellipsoid::exponential(1.0, 2.0, 1.0));
}

TEST_CASE("sample_observations") {
  SUBCASE("truncation is rejected") {
    CHECK_THROWS_AS(sample_observations(Signal({1.0, 2.0, 3.0}), Problem(0.0, 1.0), 2, 1),
                    DomainError);
  }

  SUBCASE("vanishing noise returns the signal") {
    const double tiny = std::numeric_limits<double>::denorm_min();
    const Observations y = sample_observations(Signal({1.0}), Problem(0.0, tiny), 1, 99);
    REQUIRE(y.values.size() == 1);
    CHECK(std::fabs(y.values[0] - 1.0) <= 1e-300);
  }

  SUBCASE("determinism") {
    const Signal s({0.5, -0.25, 0.125});
    const auto a = sample_observations(s, Problem(1.0, 0.3), 10, 12345);
    const auto b = sample_observations(s, Problem(1.0, 0.3), 10, 12345);
    CHECK(a.values == b.values);
    CHECK(a.seed == 12345);
    CHECK(a.values.size() == 10);
    const auto c = sample_observations(s, Problem(1.0, 0.3), 10, 12346);
    CHECK(a.values != c.values);
  }

  SUBCASE("noise is linear in epsilon for fixed draws") {
    const Signal zero;
    const auto a = sample_observations(zero, Problem(0.7, 0.2), 50, 4242);
    const auto b = sample_observations(zero, Problem(0.7, 0.4), 50, 4242);
    for (std::size_t i = 0; i < 50; ++i) CHECK(b.values[i] == 2.0 * a.values[i]);
  }

  SUBCASE("law of large numbers, gamma = 0, eps = 1") {
    constexpr std::size_t n = 100000;
    const auto y = sample_observations(Signal{}, Problem(0.0, 1.0), n, 2024);
    double mean = 0.0;
    for (double v : y.values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : y.values) var += (v - mean) * (v - mean);
    var /= (n - 1);
    CHECK(std::fabs(mean) <= 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::fabs(var - 1.0) <= 0.05);
  }

  SUBCASE("replicate variance of Y_i - theta_i matches eps^2 i^(2 gamma)") {
    const Problem p(0.5, 0.3);
    const Signal s({1.0, -1.0, 2.0});
    constexpr int reps = 20000;
    for (std::size_t i : {1u, 5u, 10u}) {
      double sum = 0.0;
      double sum_sq = 0.0;
      for (int k = 0; k < reps; ++k) {
        const auto y = sample_observations(s, p, 10, 1000 + k);
        const double e = y.values[i - 1] - s.at(i);
        sum += e;
        sum_sq += e * e;
      }
      const double var = (sum_sq - sum * sum / reps) / (reps - 1);
      const double expected = p.observation_variance(i);
      // sd of the sample variance is sqrt(2/(n-1)) * sigma^2 ~ 1% here
      CHECK(std::fabs(var / expected - 1.0) <= 0.05);
    }
  }
}

TEST_CASE("load_signal_csv") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto with_header = dir / "qfe_signal_header.csv";
  {
    std::ofstream f(with_header);
    f << "theta\n1.5\n-2\n\n3e-1\n";
  }
  const Signal s = load_signal_csv(with_header);
  CHECK(s == Signal({1.5, -2.0, 0.3}));

  const auto bare = dir / "qfe_signal_bare.csv";
  {
    std::ofstream f(bare);
    f << "0.25\r\n0.5\r\n";
  }
  CHECK(load_signal_csv(bare) == Signal({0.25, 0.5}));

  const auto broken = dir / "qfe_signal_broken.csv";
  {
    std::ofstream f(broken);
    f << "1\nabc\n";
  }
  CHECK_THROWS_AS(load_signal_csv(broken), DomainError);
  CHECK_THROWS_AS(load_signal_csv(dir / "qfe_does_not_exist.csv"), DomainError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qfe/filters.hpp"

using namespace qfe;

namespace {

void check_filter_shape(const FilterSeq& f) {
  REQUIRE(f.support() == window_cutoff(f.window()));
  double prev = 1.0;
  for (double h : f.weights()) {
    CHECK(h >= 0.0);
    CHECK(h <= 1.0);
    CHECK(h <= prev);
    prev = h;
  }
  CHECK(f.at(f.support() + 1) == 0.0);
  CHECK(f.at(0) == 0.0);
}

}  // namespace

TEST_CASE("poly_filter") {
  CHECK_THROWS_AS(poly_filter(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(poly_filter(0.0, 3.0), DomainError);

  const FilterSeq half = poly_filter(0.5, 2.0);
  REQUIRE(half.support() == 2);
  CHECK(half.at(1) == 0.5);
  CHECK(half.at(2) == 0.0);

  const FilterSeq f = poly_filter(1.0, 4.0);
  REQUIRE(f.support() == 4);
  CHECK(f.at(1) == 0.9375);
  CHECK(f.at(2) == 0.75);
  CHECK(f.at(3) == 0.4375);
  CHECK(f.at(4) == 0.0);

  for (double alpha : {0.3, 1.0, 2.7}) {
    for (double w : {3.0, 11.0, 40.0}) CHECK(poly_filter(alpha, w).at(static_cast<std::size_t>(w)) == 0.0);
  }

  SUBCASE("large alpha approaches the indicator of i < W") {
    const double w = 40.0;
    const FilterSeq g = poly_filter(50.0, w);
    for (std::size_t i = 1; i <= 36; ++i) CHECK(g.at(i) > 0.99);
  }
}

TEST_CASE("exp_filter") {
  CHECK_THROWS_AS(exp_filter(1.0, 1.0, 0.9), DomainError);
  CHECK_THROWS_AS(exp_filter(1.0, 2.1, 3.0), DomainError);

  CHECK(exp_filter(1.0, 1.0, 2.0).at(1) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-15));
  CHECK(exp_filter(1.0, 1.0, 2.0).at(1) == doctest::Approx(0.864665).epsilon(1e-6));
  CHECK(exp_filter(0.5, 2.0, 3.0).at(1) == doctest::Approx(1.0 - std::exp(-8.0)).epsilon(1e-15));
  CHECK(exp_filter(0.5, 2.0, 3.0).at(1) == doctest::Approx(0.999665).epsilon(1e-6));
  for (double r : {0.4, 1.0, 2.0}) CHECK(exp_filter(0.7, r, 6.0).at(6) == 0.0);
}

TEST_CASE("filter bounds and monotonicity, random parameters") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const double w = 1.0 + 80.0 * u(rng);
    check_filter_shape(poly_filter(0.05 + 5.0 * u(rng), w));
    check_filter_shape(exp_filter(0.01 + 3.0 * u(rng), 0.05 + 1.95 * u(rng), w));
  }
}

TEST_CASE("poly_window") {
  const WindowSolution w = poly_window(1.0, 1.0, 1.0, 0.1);
  CHECK(w.window == doctest::Approx(3.779859155861046761).epsilon(1e-14));
  CHECK(window_cutoff(w.window) == 3);
  CHECK(w.residual == 0.0);
  CHECK_FALSE(w.constant_c.has_value());
  CHECK_FALSE(w.clamped);

  CHECK_THROWS_AS(poly_window(1.0, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(poly_window(1.0, 1.0, 1.0, 0.0), DomainError);

  SUBCASE("halving epsilon multiplies the window by 2^(4/(4a+4g+1))") {
    for (auto [a, g] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.0}, std::pair{0.4, 1.3}}) {
      const double d = 4 * a + 4 * g + 1;
      for (double eps : {0.3, 1e-2, 1e-5}) {
        const double ratio = poly_window(a, g, 1.7, eps / 2).window / poly_window(a, g, 1.7, eps).window;
        CHECK(ratio == doctest::Approx(std::pow(2.0, 4.0 / d)).epsilon(1e-13));
      }
    }
  }

  SUBCASE("tiny radius clamps the window at 1") {
    const WindowSolution c = poly_window(1.0, 0.0, 1e-6, 0.9);
    CHECK(c.clamped);
    CHECK(c.window == 1.0);
  }

  SUBCASE("epsilon 1e-6 closed form") {
    const double expected = std::pow(15.75, 1.0 / 9.0) * std::pow(1e-6, -4.0 / 9.0);
    CHECK(poly_window(1.0, 1.0, 1.0, 1e-6).window == doctest::Approx(expected).epsilon(1e-13));
    CHECK(window_cutoff(expected) == 630);
  }
}

TEST_CASE("constant_c branches") {
  CHECK(constant_c(1.0, 0.5, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(constant_c(1.0, 1.0, 0.0, 1.0) == doctest::Approx(3.626860407847018768).epsilon(1e-14));
  CHECK(constant_c(1.0, 1.0, 0.0, 1.0) ==
        doctest::Approx((std::exp(4.0) - 1.0) / (2.0 * std::exp(2.0))).epsilon(1e-14));
  CHECK(constant_c(3.0, 1.5, 2.0, 2.0) == 2.0);
  CHECK(constant_c(1.0, 2.0, 0.0, 1.0) == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-15));
}

TEST_CASE("exp_window") {
  SUBCASE("r = 1, gamma = 0 against the closed-form log solution") {
    const WindowSolution w = exp_window(1.0, 1.0, 0.0, 1.0, 0.01);
    CHECK(w.window == doctest::Approx(4.927262029141633401).epsilon(1e-10));
    const double closed = (std::log(std::sinh(2.0)) + 4.0 * std::log(100.0)) / 4.0;
    CHECK(w.window == doctest::Approx(closed).epsilon(1e-10));
    REQUIRE(w.constant_c.has_value());
    CHECK(*w.constant_c == doctest::Approx(std::sinh(2.0)).epsilon(1e-15));
    CHECK(w.residual <= 1e-10);
  }

  SUBCASE("r = 0.5, gamma = 1 against a grid scan") {
    const WindowSolution w = exp_window(1.0, 0.5, 1.0, 1.0, 1e-3);
    auto f = [](double x) { return 4.5 * std::log(x) + 4.0 * std::sqrt(x) - 12.0 * std::log(10.0); };
    const double scanned = oracle::scan_root(f, 1.0, 100.0, 1e-4);
    CHECK(std::fabs(w.window - scanned) <= 1e-4);
    CHECK(w.window == doctest::Approx(14.942336730426843).epsilon(1e-10));
  }

  SUBCASE("plugging the window back reproduces c eps^-4") {
    for (double r : {0.3, 0.7, 1.0, 1.5, 2.0}) {
      for (double gamma : {0.0, 1.0, 2.5}) {
        for (double beta : {0.5, 1.0, 2.0}) {
          const double eps = 1e-4;
          const WindowSolution w = exp_window(beta, r, gamma, 1.3, eps);
          const double c = constant_c(beta, r, gamma, 1.3);
          double log_lhs = (4 * gamma + std::max(0.0, 1 - r)) * std::log(w.window) +
                           4 * beta * std::pow(w.window, r);
          if (r > 1) log_lhs -= 2 * beta * r * std::pow(w.window, r - 1);
          const double rel = std::expm1(log_lhs - std::log(c) + 4 * std::log(eps));
          CHECK(std::fabs(rel) <= 1e-8);
          CHECK(w.residual <= 1e-10);
          CHECK(w.window >= 1.0);
        }
      }
    }
  }

  SUBCASE("no root with W >= 1") {
    CHECK_THROWS_AS(exp_window(5.0, 1.0, 0.0, 1.0, 0.9), NumericalError);
    CHECK_THROWS_AS(exp_window(1.0, 1.0, 0.0, 1.0, 1.5), DomainError);
  }
}

TEST_CASE("optimal_window dispatch") {
  CHECK(optimal_window(Ellipsoid::polynomial(1.0, 1.0), 1.0, 0.1).window ==
        poly_window(1.0, 1.0, 1.0, 0.1).window);
  CHECK(optimal_window(Ellipsoid::exponential(1.0, 1.0, 1.0), 0.0, 0.01).window ==
        exp_window(1.0, 1.0, 0.0, 1.0, 0.01).window);
  CHECK(optimal_filter(Ellipsoid::polynomial(1.0, 1.0), 4.0).at(2) == 0.75);
}

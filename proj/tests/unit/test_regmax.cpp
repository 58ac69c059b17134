#include "toricj/regmax.hpp"

#include <doctest.h>

using namespace toricj;

TEST_CASE("kernel normalization") {
  const RegMaxKernel& k = default_regmax_kernel();
  CHECK(k.mass() == doctest::Approx(1).epsilon(1e-13));
  CHECK(std::abs(k.first_moment()) < 1e-14);
  CHECK(k.theta(1.0) == 0);
  CHECK(k.theta(-1.5) == 0);
  CHECK(k.theta(0) > k.theta(0.5));
  CHECK_THROWS_AS(RegMaxKernel(7), std::invalid_argument);
}

TEST_CASE("regularized maximum examples") {
  const double m = reg_max({0, 0}, {1, 1});
  CHECK(m > 0);
  CHECK(m < 1);
  const auto g = reg_max_grad({0, 0}, {1, 1});
  CHECK(g[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g[1] == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(reg_max({0, -5}, {1, 1}) == doctest::Approx(0).epsilon(1e-14));
  const auto s = reg_max_grad({0, -5}, {1, 1});
  CHECK(s[0] == doctest::Approx(1));
  CHECK(s[1] == doctest::Approx(0));

  CHECK(reg_max({2.5}, {0.3}) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(reg_max({1, 2, 3}, {0.1, 0.1, 0.1}) == doctest::Approx(3).epsilon(1e-14));
}

TEST_CASE("regularized maximum properties at fixed points") {
  const std::vector<double> eta{0.7, 0.4, 1.1};
  const std::vector<double> t{0.3, 0.1, -0.2};
  const double base = reg_max(t, eta);
  // Translation.
  CHECK(reg_max({1.3, 1.1, 0.8}, eta) == doctest::Approx(base + 1).epsilon(1e-13));
  // Bracketing: max t ≤ M ≤ max (t + η).
  CHECK(base >= 0.3);
  CHECK(base <= 1.0);
  // Non-decreasing in each coordinate, gradient sums to one.
  CHECK(reg_max({0.3, 0.2, -0.2}, eta) >= base);
  double sum = 0;
  for (double d : reg_max_grad(t, eta)) {
    CHECK(d >= 0);
    sum += d;
  }
  CHECK(sum == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("regularized maximum input checks") {
  CHECK_THROWS_AS(reg_max({1, 2, 3, 4}, {1, 1, 1, 1}), DimensionTooLarge);
  CHECK_THROWS_AS(reg_max({1, 2}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(reg_max({1, 2}, {1}), std::invalid_argument);
}

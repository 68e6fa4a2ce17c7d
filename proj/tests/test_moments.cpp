#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "mvmc/moments.hpp"
#include "mvmc/rng.hpp"
#include "oracles.hpp"

using namespace mvmc;

TEST_CASE("pochhammer values") {
  CHECK(pochhammer_rising(3.7, 0) == 1.0);
  CHECK(pochhammer_rising(2.0, 3) == doctest::Approx(24.0));
  CHECK(pochhammer_rising(0.5, 4) == doctest::Approx(6.5625));
  CHECK(std::exp(log_pochhammer_rising(2.0, 3)) == doctest::Approx(24.0));
  CHECK(falling_factorial(5.0, 2) == doctest::Approx(20.0));
  CHECK(falling_factorial(3.0, 5) == 0.0);
  CHECK(falling_factorial(3.0, 0) == 1.0);
}

TEST_CASE("stirling tables against brute-force enumeration") {
  const auto& tables = StirlingTables::instance();
  CHECK(tables.first_kind_abs(3, 2) == 3.0);
  CHECK(tables.second_kind(3, 2) == 3.0);
  CHECK(tables.second_kind(4, 1) == 1.0);
  CHECK(tables.first_kind_abs(4, 1) == 6.0);
  for (int r = 0; r <= 30; ++r) {
    CHECK(tables.first_kind_abs(r, r) == 1.0);
    CHECK(tables.second_kind(r, r) == 1.0);
  }
  for (int r = 1; r <= 6; ++r) {
    for (int t = 0; t <= r; ++t) {
      CHECK(tables.first_kind_abs(r, t) ==
            static_cast<double>(oracles::stirling_first_brute(r, t)));
      CHECK(tables.second_kind(r, t) ==
            static_cast<double>(oracles::stirling_second_brute(r, t)));
    }
  }
  CHECK_THROWS_AS(tables.first_kind_abs(31, 1), std::invalid_argument);
  CHECK_THROWS_AS(tables.second_kind(1, -1), std::invalid_argument);
}

TEST_CASE("rising-to-falling connection coefficients are Lah numbers") {
  const auto& tables = StirlingTables::instance();
  auto binomial = [](int n, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return v;
  };
  for (int r = 1; r <= 8; ++r) {
    double factorial_r = 1.0;
    for (int i = 2; i <= r; ++i) factorial_r *= i;
    double factorial_s = 1.0;
    for (int s = 1; s <= r; ++s) {
      factorial_s *= s;
      const double lah = binomial(r - 1, s - 1) * factorial_r / factorial_s;
      CHECK(tables.rising_to_falling(r, s) == doctest::Approx(lah));
    }
  }
}

TEST_CASE("c coefficient closed form") {
  const std::vector<double> masses{1.0, 1.0};
  CHECK(c_coefficient(5, masses, std::vector<int>{0, 0}) == 1.0);
  CHECK(c_coefficient(3, masses, std::vector<int>{1, 1}) ==
        doctest::Approx(1.0));
  CHECK(c_coefficient(3, masses, std::vector<int>{2, 2}) == 0.0);
  // sigma = n + 1 kills the falling factorial.
  CHECK(c_coefficient(3, masses, std::vector<int>{2, 2}) == 0.0);
}

TEST_CASE("c recursion holds for the closed form and fails when perturbed") {
  Rng rng(21);
  for (int k : {2, 3, 4}) {
    std::vector<double> masses(static_cast<std::size_t>(k));
    for (double& m : masses) m = 0.25 + rng.uniform01() * 2.0;
    std::vector<int> s(static_cast<std::size_t>(k), 0);
    for (;;) {
      for (int n = 1; n <= 20; ++n) {
        CHECK(c_recursion_check(n, masses, s));
      }
      int pos = 0;
      while (pos < k && s[static_cast<std::size_t>(pos)] == 3) {
        s[static_cast<std::size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == k) break;
      ++s[static_cast<std::size_t>(pos)];
    }
  }

  // A multiplicative nudge on one side breaks the identity.
  const std::vector<double> masses{1.0, 1.0};
  const std::vector<int> s{1, 1};
  const double a = 2.0;
  const int n = 4;
  std::vector<int> down{0, 1};
  const double lhs = 1.001 * c_coefficient(n + 1, masses, s);
  const double rhs =
      (n + 1.0) * (masses[0] + s[0] - 1.0) / (a + n) *
          c_coefficient(n, masses, down) +
      (n + 1.0) / (a + n) * c_coefficient(n, masses, s);
  CHECK(std::abs(lhs - rhs) / std::abs(lhs) > 1e-10);

  // Zero coordinates degenerate consistently.
  CHECK(c_recursion_check(6, masses, std::vector<int>{2, 0}));
  CHECK(c_recursion_check(6, masses, std::vector<int>{0, 0}));
}

TEST_CASE("polya mixed moment: spot values") {
  MomentQuery query{.n = 3, .masses = {1.0, 1.0}, .orders = {0, 0}};
  CHECK(polya_mixed_moment(query) == 1.0);

  query.orders = {1, 1};
  CHECK(polya_mixed_moment(query) == doctest::Approx(1.0 / 12.0));
  CHECK(brute_force_moment_exact(query) == doctest::Approx(1.0 / 12.0));

  // First moment is alpha(B_1)/a at every n, by exchangeability.
  for (int n : {1, 5, 17}) {
    MomentQuery first{.n = n, .masses = {0.6, 1.4}, .orders = {1, 0}};
    CHECK(polya_mixed_moment(first) == doctest::Approx(0.6 / 2.0));
  }
}

TEST_CASE("moment query validation") {
  MomentQuery query{.n = 0, .masses = {1.0, 1.0}, .orders = {1, 1}};
  CHECK_THROWS_AS(query.validate(), std::invalid_argument);
  query.n = 3;
  query.orders = {1};
  CHECK_THROWS_AS(query.validate(), std::invalid_argument);
  query.orders = {1, 31};
  CHECK_THROWS_AS(query.validate(), std::invalid_argument);
  query.orders = {1, -1};
  CHECK_THROWS_AS(query.validate(), std::invalid_argument);
  query.masses = {1.0, -1.0};
  query.orders = {1, 1};
  CHECK_THROWS_AS(query.validate(), std::invalid_argument);
}

TEST_CASE("closed form equals the exact brute-force sum") {
  for (int n = 1; n <= 10; ++n) {
    for (int r1 = 0; r1 <= 3; ++r1) {
      for (int r2 = 0; r2 <= 3; ++r2) {
        MomentQuery query{.n = n, .masses = {1.0, 1.0}, .orders = {r1, r2}};
        const double closed = polya_mixed_moment(query);
        const double exact = brute_force_moment_exact(query);
        CHECK(std::abs(closed - exact) <= 1e-10);
      }
    }
  }
  // Three cells, unequal masses.
  for (int n : {2, 5, 9}) {
    MomentQuery query{
        .n = n, .masses = {0.5, 0.7, 0.8}, .orders = {2, 1, 1}};
    CHECK(std::abs(polya_mixed_moment(query) -
                   brute_force_moment_exact(query)) <= 1e-10);
  }
  MomentQuery over_budget{
      .n = 13, .masses = {1.0, 1.0}, .orders = {1, 1}};
  CHECK_THROWS_AS(brute_force_moment_exact(over_budget),
                  std::invalid_argument);
}

TEST_CASE("monte carlo oracle agrees with the closed form") {
  MomentQuery query{.n = 5, .masses = {1.0, 1.0}, .orders = {2, 1}};
  Rng rng(22);
  const auto mc = brute_force_moment_mc(query, 1000000, rng);
  const double closed = polya_mixed_moment(query);
  CHECK(std::abs(mc.value - closed) <= 3.0 * mc.std_error);

  MomentQuery zero{.n = 4, .masses = {1.0, 1.0}, .orders = {0, 0}};
  Rng rng2(23);
  CHECK(brute_force_moment_mc(zero, 100, rng2).value == 1.0);
  CHECK(brute_force_moment_exact(zero) == doctest::Approx(1.0));
}

TEST_CASE("dirichlet limit moments") {
  const std::vector<double> masses{1.0, 1.0};
  CHECK(dirichlet_moment(masses, std::vector<int>{1, 1}) ==
        doctest::Approx(1.0 / 6.0));
  CHECK(dirichlet_moment(std::vector<double>{0.6, 1.4},
                         std::vector<int>{1, 0}) ==
        doctest::Approx(0.3));

  MomentQuery query{.n = 200, .masses = {1.0, 1.0}, .orders = {2, 2}};
  const double limit = dirichlet_moment(query.masses, query.orders);
  CHECK(std::abs(polya_mixed_moment(query) - limit) < 0.01);
}

TEST_CASE("finite-n moments approach the dirichlet limit monotonically") {
  const std::vector<std::vector<int>> order_grid{
      {1, 1}, {2, 1}, {2, 2}, {3, 3}};
  const std::vector<std::vector<double>> mass_grid{{1.0, 1.0}, {0.5, 2.5}};
  for (const auto& masses : mass_grid) {
    for (const auto& orders : order_grid) {
      const double limit = dirichlet_moment(masses, orders);
      const double at_20 = polya_mixed_moment(
          MomentQuery{.n = 20, .masses = masses, .orders = orders});
      const double at_200 = polya_mixed_moment(
          MomentQuery{.n = 200, .masses = masses, .orders = orders});
      CHECK(std::abs(at_200 - limit) < std::abs(at_20 - limit));
    }
  }
}

TEST_CASE("oracle triangle on a parameter grid") {
  Rng rng(24);
  const std::vector<double> a_values{1.0, 2.0, 5.0};
  for (double a : a_values) {
    for (int n : {2, 4, 8}) {
      MomentQuery query{
          .n = n, .masses = {a * 0.4, a * 0.6}, .orders = {2, 1}};
      const double closed = polya_mixed_moment(query);
      CHECK(std::abs(closed - brute_force_moment_exact(query)) <= 1e-10);
      Rng child = rng.split(static_cast<std::uint64_t>(n * 100 + a));
      const auto mc = brute_force_moment_mc(query, 200000, child);
      CHECK(std::abs(mc.value - closed) <= 3.5 * mc.std_error);
    }
  }
}

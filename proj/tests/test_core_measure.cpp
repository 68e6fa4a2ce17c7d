#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "mvmc/base_measure.hpp"
#include "mvmc/measure.hpp"
#include "mvmc/rng.hpp"
#include "mvmc/sampling.hpp"
#include "mvmc/stats.hpp"
#include "oracles.hpp"

using namespace mvmc;

TEST_CASE("rng streams are reproducible and splits are independent") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng parent(7);
  Rng c1 = parent.split(3);
  Rng c2 = parent.split(3);
  Rng c3 = parent.split(4);
  bool all_equal = true;
  bool any_equal_other = false;
  for (int i = 0; i < 50; ++i) {
    const auto x = c1.next_u64();
    all_equal = all_equal && (x == c2.next_u64());
    any_equal_other = any_equal_other || (x == c3.next_u64());
  }
  CHECK(all_equal);
  CHECK_FALSE(any_equal_other);

  // Splitting is keyed on the construction seed, not the consumed state.
  Rng p1(9);
  Rng p2(9);
  (void)p2.next_u64();
  CHECK(p1.split(0).next_u64() == p2.split(0).next_u64());
}

TEST_CASE("base measure construction validates parameters") {
  CHECK_THROWS_AS(BaseMeasure::Uniform(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BaseMeasure::Gaussian(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(BaseMeasure::Cauchy(0.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(BaseMeasure::Uniform(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(BaseMeasure::Discrete({0.0}, {0.5}), std::invalid_argument);
  CHECK_THROWS_AS(BaseMeasure::Discrete({0.0, 1.0}, {1.2, -0.2}),
                  std::invalid_argument);
}

TEST_CASE("sample_base: single-atom measure is deterministic") {
  const auto base = BaseMeasure::Discrete({3.0}, {1.0});
  Rng rng(11);
  for (int i = 0; i < 10; ++i) CHECK(sample_base(base, rng) == 3.0);
}

TEST_CASE("sample_base: uniform mean and gaussian variance at 1e6 draws") {
  const auto uniform = BaseMeasure::Uniform(0.0, 1.0);
  Rng rng(101);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) sum += sample_base(uniform, rng);
  CHECK(std::abs(sum / n - 0.5) < 0.002);

  const auto gaussian = BaseMeasure::Gaussian(0.0, 1.0);
  Rng rng2(102);
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_base(gaussian, rng2);
    s1 += x;
    s2 += x * x;
  }
  const double var = s2 / n - (s1 / n) * (s1 / n);
  CHECK(std::abs(var - 1.0) < 0.01);
}

TEST_CASE("mean_abs per family") {
  CHECK(BaseMeasure::Uniform(0.0, 1.0).mean_abs() == doctest::Approx(0.5));
  CHECK(BaseMeasure::Uniform(-1.0, 1.0).mean_abs() == doctest::Approx(0.5));
  CHECK(BaseMeasure::Gaussian(0.0, 1.0).mean_abs() ==
        doctest::Approx(std::sqrt(2.0 / M_PI)));
  CHECK(std::isinf(BaseMeasure::Cauchy(0.0, 1.0).mean_abs()));
  CHECK(BaseMeasure::Discrete({-2.0, 2.0}, {0.5, 0.5}).mean_abs() ==
        doctest::Approx(2.0));
}

TEST_CASE("beta_sample special cases and parameter errors") {
  Rng rng(5);
  CHECK(beta_sample(1.0, 0.0, rng) == 1.0);
  CHECK_THROWS_AS(beta_sample(0.0, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(beta_sample(1.0, -1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(beta_sample(2.0, 0.0, rng), std::invalid_argument);
}

TEST_CASE("beta_sample(1,1) is uniform: KS at 1e6 draws") {
  Rng rng(301);
  std::vector<double> xs(1000000);
  for (double& x : xs) x = beta_sample(1.0, 1.0, rng);
  const double d =
      ks_one_sample(std::move(xs), [](double x) { return x; });
  CHECK(d < 0.002);
}

TEST_CASE("beta_sample(5,2) mean matches alpha/(alpha+beta)") {
  Rng rng(302);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) sum += beta_sample(5.0, 2.0, rng);
  CHECK(std::abs(sum / n - 5.0 / 7.0) < 0.002);
}

TEST_CASE("dirichlet_uniform_weights: degenerate and symmetric cases") {
  Rng rng(401);
  CHECK_THROWS_AS(dirichlet_uniform_weights(0, rng), std::invalid_argument);
  const auto w1 = dirichlet_uniform_weights(1, rng);
  REQUIRE(w1.size() == 1);
  CHECK(w1[0] == 1.0);

  double mean[3] = {0.0, 0.0, 0.0};
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const auto w = dirichlet_uniform_weights(3, rng);
    for (int j = 0; j < 3; ++j) mean[j] += w[static_cast<std::size_t>(j)];
  }
  for (double m : mean) CHECK(std::abs(m / n - 1.0 / 3.0) < 0.002);
}

TEST_CASE("dirichlet_uniform_weights: first coordinate is Beta(1, n-1)") {
  Rng rng(402);
  const int n = 1000000;
  std::vector<double> first(static_cast<std::size_t>(n));
  for (double& x : first) x = dirichlet_uniform_weights(5, rng)[0];
  const double d = ks_one_sample(
      std::move(first), [](double x) { return 1.0 - std::pow(1.0 - x, 4.0); });
  CHECK(d < 0.003);
}

TEST_CASE("stick breaking agrees with normalized exponentials in law") {
  // Per-coordinate two-sample KS below the 1% critical value on 1e5 draws.
  const int n = 100000;
  const int dim = 4;
  Rng rng_a(403);
  Rng rng_b(404);
  std::vector<std::vector<double>> stick(dim), expo(dim);
  for (auto& v : stick) v.reserve(n);
  for (auto& v : expo) v.reserve(n);
  for (int i = 0; i < n; ++i) {
    const auto a = dirichlet_uniform_weights(dim, rng_a);
    const auto b = oracles::dirichlet_by_exponentials(dim, rng_b);
    for (int j = 0; j < dim; ++j) {
      stick[static_cast<std::size_t>(j)].push_back(a[static_cast<std::size_t>(j)]);
      expo[static_cast<std::size_t>(j)].push_back(b[static_cast<std::size_t>(j)]);
    }
  }
  const double critical = ks_two_sample_critical(n, n, 0.01);
  for (int j = 0; j < dim; ++j) {
    const double d = ks_two_sample(stick[static_cast<std::size_t>(j)],
                                   expo[static_cast<std::size_t>(j)]);
    CHECK(d < critical);
  }
}

TEST_CASE("weights sum to one within 1e-12 for many sizes") {
  Rng rng(405);
  for (int n : {2, 3, 7, 50, 500}) {
    const auto w = dirichlet_uniform_weights(n, rng);
    double sum = 0.0;
    for (double v : w) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("weighted discrete measure invariants") {
  CHECK_THROWS_AS(WeightedDiscreteMeasure({1.0}, {0.5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeightedDiscreteMeasure({1.0, 2.0}, {0.7, 0.4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeightedDiscreteMeasure({1.0, 2.0}, {1.5, -0.5}),
                  std::invalid_argument);
  const auto mu = WeightedDiscreteMeasure::point_mass(2.5);
  CHECK(mu.atoms()[0] == 2.5);
  CHECK(mu.weights()[0] == 1.0);
}

TEST_CASE("integrate: arithmetic examples and error path") {
  const WeightedDiscreteMeasure two({2.0, 4.0}, {0.5, 0.5});
  CHECK(integrate([](double x) { return x; }, two) == doctest::Approx(3.0));
  CHECK(integrate([](double) { return 1.0; }, two) == doctest::Approx(1.0));
  const WeightedDiscreteMeasure three({0.0, 1.0, 2.0}, {0.2, 0.3, 0.5});
  CHECK(integrate([](double x) { return x * x; }, three) ==
        doctest::Approx(2.3));
  CHECK_THROWS_AS(
      integrate([](double x) { return 1.0 / x; },
                WeightedDiscreteMeasure({0.0, 1.0}, {0.5, 0.5})),
      std::domain_error);
}

TEST_CASE("integrate is linear in g and the weights") {
  Rng rng(406);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform01() * 8);
    std::vector<double> atoms(static_cast<std::size_t>(n));
    for (double& x : atoms) x = rng.uniform(-5.0, 5.0);
    auto weights = dirichlet_uniform_weights(n, rng);
    const WeightedDiscreteMeasure mu(atoms, weights);
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    auto g = [](double x) { return std::sin(x); };
    auto h = [](double x) { return x * x; };
    const double combined =
        integrate([&](double x) { return a * g(x) + b * h(x); }, mu);
    const double split = a * integrate(g, mu) + b * integrate(h, mu);
    CHECK(std::abs(combined - split) <= 1e-12);
  }
}

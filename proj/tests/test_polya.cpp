#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "mvmc/polya.hpp"
#include "mvmc/rng.hpp"

using namespace mvmc;

TEST_CASE("first draw comes from alpha0") {
  const auto base = BaseMeasure::Discrete({3.0}, {1.0}, 2.5);
  Rng rng(1);
  PolyaUrn urn(base);
  CHECK(urn.next(rng) == 3.0);
  CHECK(urn.draws() == 1);
}

TEST_CASE("large mass urns almost never repeat") {
  // Expected repeats over 100 draws: sum_j j/(a+j) ~ 0.005 at a = 1e6.
  const auto base = BaseMeasure::Uniform(0.0, 1.0, 1e6);
  Rng rng(2);
  const int blocks = 2000;
  double repeats = 0.0;
  for (int b = 0; b < blocks; ++b) {
    PolyaUrn urn(base);
    for (int i = 0; i < 100; ++i) (void)urn.next(rng);
    for (const auto& [atom, count] : urn.atom_counts()) {
      repeats += static_cast<double>(count - 1);
    }
  }
  CHECK(repeats / blocks < 0.01);
}

TEST_CASE("second draw copies the first with probability 1/(a+1)") {
  const auto base = BaseMeasure::Uniform(0.0, 1.0, 1.0);
  Rng rng(3);
  const int trials = 100000;
  int copies = 0;
  for (int t = 0; t < trials; ++t) {
    PolyaUrn urn(base);
    const double y1 = urn.next(rng);
    if (urn.next(rng) == y1) ++copies;
  }
  CHECK(std::abs(static_cast<double>(copies) / trials - 0.5) < 0.005);
}

TEST_CASE("polya_block basics") {
  const auto base = BaseMeasure::Uniform(0.0, 1.0, 1.0);
  Rng rng(4);
  CHECK_THROWS_AS(polya_block(base, 0, rng), std::invalid_argument);
  CHECK(polya_block(base, 1, rng).size() == 1);
}

TEST_CASE("two-draw tie probability for a two-atom base") {
  // P(Y1 = Y2) = 1/(a+1) + a/(a+1) sum p_i^2 = 0.75 at a = 1.
  const auto base = BaseMeasure::Discrete({0.0, 1.0}, {0.5, 0.5}, 1.0);
  Rng rng(5);
  const int blocks = 100000;
  int ties = 0;
  for (int b = 0; b < blocks; ++b) {
    const auto block = polya_block(base, 2, rng);
    if (block[0] == block[1]) ++ties;
  }
  CHECK(std::abs(static_cast<double>(ties) / blocks - 0.75) < 0.01);
}

TEST_CASE("large mass blocks are all distinct") {
  const auto base = BaseMeasure::Uniform(0.0, 1.0, 1e6);
  Rng rng(6);
  const int blocks = 10000;
  int all_distinct = 0;
  for (int b = 0; b < blocks; ++b) {
    const auto block = polya_block(base, 5, rng);
    bool distinct = true;
    for (int i = 0; i < 5 && distinct; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        if (block[static_cast<std::size_t>(i)] ==
            block[static_cast<std::size_t>(j)]) {
          distinct = false;
          break;
        }
      }
    }
    if (distinct) ++all_distinct;
  }
  CHECK(static_cast<double>(all_distinct) / blocks > 0.999);
}

TEST_CASE("partition pmf: closed values and validation") {
  const std::vector<int> counts_all{4};
  CHECK(polya_partition_pmf(std::vector<double>{2.0}, counts_all) ==
        doctest::Approx(1.0));
  CHECK(polya_partition_pmf(std::vector<double>{1.0, 1.0},
                            std::vector<int>{1, 1}) ==
        doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(polya_partition_pmf(std::vector<double>{1.0, -1.0},
                                      std::vector<int>{1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(polya_partition_pmf(std::vector<double>{1.0, 1.0},
                                      std::vector<int>{1, -1}),
                  std::invalid_argument);
}

namespace {

// Iterates compositions of n into k parts, invoking fn on each.
void for_each_composition(int n, int k,
                          const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> j(static_cast<std::size_t>(k), 0);
  for (;;) {
    int partial = 0;
    for (int i = 0; i + 1 < k; ++i) partial += j[static_cast<std::size_t>(i)];
    if (partial <= n) {
      j[static_cast<std::size_t>(k - 1)] = n - partial;
      fn(j);
    }
    int pos = 0;
    while (pos + 1 < k && j[static_cast<std::size_t>(pos)] == n) {
      j[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos + 1 == k) break;
    ++j[static_cast<std::size_t>(pos)];
  }
}

}  // namespace

TEST_CASE("partition pmf sums to one over the composition set") {
  const std::vector<std::vector<double>> mass_sets{
      {1.0, 1.0}, {0.5, 1.5, 2.0}, {0.3, 0.7, 1.1, 0.9}};
  for (const auto& masses : mass_sets) {
    const int k = static_cast<int>(masses.size());
    for (int n : {1, 5, 12, 20}) {
      double total = 0.0;
      for_each_composition(n, k, [&](const std::vector<int>& j) {
        total += polya_partition_pmf(masses, j);
      });
      CHECK(std::abs(total - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("simulated cell counts match the pmf within 3 MC errors") {
  const std::vector<double> probs{0.2, 0.3, 0.5};
  const double a = 2.0;
  std::vector<double> masses;
  for (double p : probs) masses.push_back(a * p);
  const auto base = BaseMeasure::Discrete({0.0, 1.0, 2.0}, probs, a);
  Rng rng(7);
  const int blocks = 100000;
  for (int n : {2, 6}) {
    std::map<std::vector<int>, int> freq;
    for (int b = 0; b < blocks; ++b) {
      const auto block = polya_block(base, n, rng);
      std::vector<int> counts(3, 0);
      for (double y : block) ++counts[static_cast<std::size_t>(y)];
      ++freq[counts];
    }
    for_each_composition(n, 3, [&](const std::vector<int>& j) {
      const double p = polya_partition_pmf(masses, j);
      const double observed =
          static_cast<double>(freq.count(j) ? freq.at(j) : 0) / blocks;
      const double se = std::sqrt(p * (1.0 - p) / blocks);
      CHECK(std::abs(observed - p) <= 3.0 * se + 1e-12);
    });
  }
}

TEST_CASE("blocks are exchangeable: pattern frequencies match within orbits") {
  const auto base = BaseMeasure::Discrete({0.0, 1.0}, {0.3, 0.7}, 1.5);
  Rng rng(8);
  const int blocks = 100000;
  std::array<int, 8> freq{};
  for (int b = 0; b < blocks; ++b) {
    const auto block = polya_block(base, 3, rng);
    int code = 0;
    for (double y : block) code = code * 2 + static_cast<int>(y);
    ++freq[static_cast<std::size_t>(code)];
  }
  // Orbits under permutation: {001,010,100} and {011,101,110}.
  const std::array<std::array<int, 3>, 2> orbits{{{1, 2, 4}, {3, 5, 6}}};
  for (const auto& orbit : orbits) {
    double mean = 0.0;
    for (int code : orbit) mean += freq[static_cast<std::size_t>(code)];
    mean /= 3.0 * blocks;
    const double se = std::sqrt(mean * (1.0 - mean) / blocks);
    for (int code : orbit) {
      const double observed =
          static_cast<double>(freq[static_cast<std::size_t>(code)]) / blocks;
      CHECK(std::abs(observed - mean) <= 3.0 * se);
    }
  }
}

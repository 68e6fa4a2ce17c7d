#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mvmc/experiments.hpp"

using namespace mvmc;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "mvmc_tests" / leaf;
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("example 1: burn-in ordering, ratio and timing monotonicity") {
  const RunConfig run{.seed = 11, .out_dir = temp_dir("ex1"), .threads = 1};
  const auto result = run_example1(run);
  CHECK(result.failures.empty());
  REQUIRE(result.burn_ins.size() == 12);

  std::map<std::pair<double, int>, BurnInRow> rows;
  for (const auto& row : result.burn_ins) {
    CHECK(row.burn_in >= 0);
    rows[{row.a, row.n}] = row;
  }

  // Convergence improves with n. The 50-step-hold rule is informative in
  // the slow-mixing regime (larger a); at small a the stationary excursion
  // wait dominates it, so the ordering is asserted for a in {50, 100}.
  for (double a : {50.0, 100.0}) {
    int previous = rows[{a, 1}].burn_in;
    for (int n : {2, 10, 20}) {
      const int current = rows[{a, n}].burn_in;
      CHECK(current <= 1.2 * previous + 10);
      previous = std::max(previous, current);
    }
  }
  // The headline comparison at a = 100.
  CHECK(rows[{100.0, 1}].burn_in >=
        3 * std::max(rows[{100.0, 20}].burn_in, 1));

  // Work per iteration grows with n, so the timing table is monotone.
  REQUIRE(result.timings.size() == 5);
  for (std::size_t i = 0; i + 1 < result.timings.size(); ++i) {
    CHECK(result.timings[i].seconds > 0.0);
    CHECK(result.timings[i].seconds <= result.timings[i + 1].seconds);
  }
  // Loose absolute cap for 500 iterations at n = 100.
  CHECK(result.timings.back().n == 100);
  CHECK(result.timings.back().seconds < 5.0);

  CHECK(fs::exists(run.out_dir / "example1_a100_n20.csv"));
  CHECK(fs::exists(run.out_dir / "example1_burnin.csv"));
  CHECK(fs::exists(run.out_dir / "example1_timing.json"));
}

TEST_CASE("example 2: start independence and symmetric stationary mean") {
  const RunConfig run{.seed = 12, .out_dir = temp_dir("ex2"), .threads = 1};
  const auto result = run_example2(run);
  CHECK(result.failures.empty());

  // Post-burn-in samples across starts are indistinguishable at the 1%
  // level for every n.
  REQUIRE(result.ks_rows.size() == 9);
  for (const auto& row : result.ks_rows) CHECK(row.pass);

  // Symmetric alpha0 makes the stationary mean zero.
  CHECK(std::abs(result.pooled_mean) <= 3.0 * result.pooled_std_error);

  // Larger n reaches the stationary band sooner from every start.
  std::map<std::pair<int, double>, int> first_entry;
  for (const auto& row : result.burn_ins) {
    CHECK(row.first_entry >= 0);
    first_entry[{row.n, row.start}] = row.first_entry;
  }
  for (double start : {-3.0, 3.0}) {
    CHECK(first_entry[{20, start}] < first_entry[{1, start}]);
  }
  CHECK(fs::exists(run.out_dir / "example2_n20_start-3.csv"));
}

TEST_CASE("example 3: normalized grids and the large-a approximation") {
  const RunConfig run{.seed = 13, .out_dir = temp_dir("ex3"), .threads = 1};
  const auto result = run_example3(run);
  CHECK(result.failures.empty());
  REQUIRE(result.snapshots.size() == 24);

  std::map<std::tuple<double, int, int>, DensitySnapshotRow> rows;
  for (const auto& row : result.snapshots) {
    CHECK(std::abs(row.integral - 1.0) <= 0.02);
    rows[{row.a, row.n, row.m}] = row;
  }
  // a = 100: by m = 100 the n = 20 chain approximates the limit density
  // while n = 1 is still far; n = 1 gets there by m = 1000.
  CHECK(rows[{100.0, 20, 100}].l1_to_limit < 0.15);
  CHECK(rows[{100.0, 20, 100}].l1_to_limit <
        rows[{100.0, 1, 100}].l1_to_limit);
  CHECK(rows[{100.0, 1, 1000}].l1_to_limit < 0.15);
  CHECK(fs::exists(run.out_dir / "example3_a100_n20_m100.csv"));
}

TEST_CASE("simulate_chain reruns are byte-identical and threads do not leak") {
  const fs::path dir = temp_dir("sim");
  SimulateChainConfig config{.kind = "mean",
                             .n = 2,
                             .base = BaseMeasure::Uniform(0.0, 1.0, 1.0),
                             .steps = 64,
                             .m0 = 0.0,
                             .g = "identity",
                             .source = "polya",
                             .out_file = dir / "a.csv"};
  simulate_chain(config, 7);
  config.out_file = dir / "b.csv";
  simulate_chain(config, 7);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.csv").rfind("m,value\n", 0) == 0);

  // Example outputs are also thread-count independent.
  const RunConfig serial{.seed = 5, .out_dir = temp_dir("thr1"), .threads = 1};
  const RunConfig pooled{.seed = 5, .out_dir = temp_dir("thr4"), .threads = 4};
  (void)run_example3(serial);
  (void)run_example3(pooled);
  CHECK(slurp(serial.out_dir / "example3_a100_n20_m100.csv") ==
        slurp(pooled.out_dir / "example3_a100_n20_m100.csv"));
  CHECK(slurp(serial.out_dir / "example3_report.json") ==
        slurp(pooled.out_dir / "example3_report.json"));
}

TEST_CASE("diagnose report carries radius, drift and the epsilon bound") {
  DiagnoseConfig config;
  config.n = 2;
  config.a = 1.0;
  config.mean_abs_y = 0.5;
  config.lambda = 0.75;
  config.k_deriv = 1.0;
  config.base = BaseMeasure::Uniform(0.0, 1.0, 1.0);
  config.drift_samples = 4000;
  config.tv_replicas = 500;
  config.tv_checkpoints = {1, 2, 4};
  const auto result = run_diagnose(config, 3);
  CHECK(result.drift_checked);
  CHECK(result.drift_pass);
  REQUIRE(result.epsilon_bound.has_value());
  CHECK(result.json.find("\"radius\"") != std::string::npos);
  CHECK(result.json.find("\"epsilon_bound\"") != std::string::npos);
  CHECK(result.json.find("\"tv_curve\"") != std::string::npos);
  CHECK(result.tv_m.size() == 3);
}

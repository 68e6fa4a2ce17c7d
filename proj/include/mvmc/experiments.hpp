#ifndef MVMC_EXPERIMENTS_HPP_
#define MVMC_EXPERIMENTS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mvmc/base_measure.hpp"
#include "mvmc/rng.hpp"
#include "mvmc/stats.hpp"

namespace mvmc {

struct RunConfig {
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
  int threads = 1;
};

struct Failure {
  std::string item;
  std::string error;
};

// Mean-chain trajectory including the start value, so it has steps+1 entries.
std::vector<double> mean_chain_trajectory(int n, const BaseMeasure& base,
                                          double m0, int steps, Rng rng);

// Stationary mean/sd read off the final third of a dedicated long run.
StationaryMoments stationary_reference_moments(int n, const BaseMeasure& base,
                                               double m0, int steps, Rng rng);

// Post-burn-in states thinned to every `thin`-th step.
std::vector<double> thinned_stationary_sample(int n, const BaseMeasure& base,
                                              double m0, int burn_in, int thin,
                                              int count, Rng rng);

// --------------------------------------------------------------------------
// Example reproductions. Each writes plot-ready CSV/JSON under out_dir and
// returns the scalar summaries for tests.
// --------------------------------------------------------------------------

struct BurnInRow {
  double a = 0.0;
  int n = 0;
  double start = 0.0;
  int burn_in = -1;     // -1 when the rule found no stable window
  int first_entry = -1; // first step inside the +-2 sd stationary band
};

struct TimingRow {
  int n = 0;
  int iterations = 0;
  double seconds = 0.0;
};

struct Example1Result {
  std::vector<BurnInRow> burn_ins;
  std::vector<TimingRow> timings;
  std::string hardware_note;
  std::vector<Failure> failures;
};

Example1Result run_example1(const RunConfig& run, int m_max = 500);

struct KsComparisonRow {
  int n = 0;
  double start_a = 0.0;
  double start_b = 0.0;
  double statistic = 0.0;
  double critical = 0.0;
  bool pass = false;
};

struct Example2Result {
  std::vector<BurnInRow> burn_ins;
  std::vector<KsComparisonRow> ks_rows;
  double pooled_mean = 0.0;
  double pooled_std_error = 0.0;
  std::vector<Failure> failures;
};

Example2Result run_example2(const RunConfig& run);

struct DensitySnapshotRow {
  double a = 0.0;
  int n = 0;
  int m = 0;
  double integral = 0.0;
  // L1 distance to the centered limit density (variance 2); only meaningful
  // for large a and reported for every run.
  double l1_to_limit = 0.0;
};

struct Example3Result {
  std::vector<DensitySnapshotRow> snapshots;
  std::vector<Failure> failures;
};

Example3Result run_example3(const RunConfig& run);

// --------------------------------------------------------------------------
// simulate-chain: reproducible single trajectories with CSV output.
// --------------------------------------------------------------------------

struct SimulateChainConfig {
  std::string kind = "mean";  // mean | functional | qn | ft
  int n = 1;
  BaseMeasure base;
  int steps = 100;
  double m0 = 0.0;
  std::string g = "identity";          // functional chains only
  std::string source = "polya";        // qn chains: polya | iid
  std::filesystem::path out_file = "chain.csv";
};

void simulate_chain(const SimulateChainConfig& config, std::uint64_t seed);

// --------------------------------------------------------------------------
// diagnose: small-set radius, drift check, minorization bound, empirical
// total-variation decay.
// --------------------------------------------------------------------------

struct DiagnoseConfig {
  int n = 1;
  double a = 1.0;
  double mean_abs_y = 0.5;
  double lambda = 0.75;
  double s_exponent = 1.0;
  std::optional<double> k_deriv;  // enables the epsilon bound when n >= 2
  std::optional<BaseMeasure> base;  // enables drift MC and the TV curve
  int drift_samples = 20000;
  int tv_replicas = 4000;
  std::vector<int> tv_checkpoints = {1, 2, 4, 8, 16, 32, 64};
};

struct DiagnoseResult {
  double radius = 0.0;
  bool drift_pass = true;
  bool drift_checked = false;
  std::optional<double> epsilon_bound;
  std::vector<int> tv_m;
  std::vector<double> tv_estimate;
  std::string json;  // the full machine-readable report
};

DiagnoseResult run_diagnose(const DiagnoseConfig& config, std::uint64_t seed);

}  // namespace mvmc

#endif  // MVMC_EXPERIMENTS_HPP_

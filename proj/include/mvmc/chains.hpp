#ifndef MVMC_CHAINS_HPP_
#define MVMC_CHAINS_HPP_

#include <functional>
#include <span>
#include <vector>

#include "mvmc/base_measure.hpp"
#include "mvmc/kernel.hpp"
#include "mvmc/measure.hpp"
#include "mvmc/rng.hpp"

namespace mvmc {

// ---------------------------------------------------------------------------
// Exchangeable-sequence chain Q_n = W_n d_{Z_n} + (1 - W_n) Q_{n-1},
// W_1 = 1, W_n ~ Beta(1, n-1).
// ---------------------------------------------------------------------------

struct QnState {
  int step = 0;
  std::vector<double> atoms;    // Z_1..Z_step, kept with multiplicity
  std::vector<double> weights;  // Dirichlet(1,...,1) distributed

  WeightedDiscreteMeasure measure() const {
    return WeightedDiscreteMeasure(atoms, weights);
  }
};

// Adds atom z with weight W ~ Beta(1, step), scaling the old weights by 1-W.
void qn_step(QnState& state, double z, Rng& rng);

enum class SourceKind { kPolya, kIid };

// Runs n steps feeding Z_i from the chosen exchangeable source.
QnState qn_run(int n, SourceKind source, const BaseMeasure& base, Rng& rng);

// ---------------------------------------------------------------------------
// Generalized Feigin-Tweedie chain
// P_m = theta_m sum_i q_{m,i} d_{Y_{m,i}} + (1 - theta_m) P_{m-1},
// theta ~ Beta(n, a), q ~ Dirichlet(1,...,1), Y a fresh Polya block.
// ---------------------------------------------------------------------------

// Pre-drawn one-step randomness. Drawing order is pinned (theta, then
// weights, then block) so coupled chains and the n=1 reduction fixture can
// share streams.
struct Innovation {
  double theta = 1.0;
  std::vector<double> weights;
  std::vector<double> atoms;
};

Innovation draw_innovation(int n, const BaseMeasure& base, Rng& rng);

// T = sum_i q_i g(Y_i); throws if g is non-finite at an atom.
double innovation_value(const Innovation& inn);
double innovation_value(const Innovation& inn,
                        const std::function<double(double)>& g);

struct FtConfig {
  int n = 1;
  BaseMeasure base;
  // Atoms below this weight are dropped and the state renormalized; the
  // residual on P_0 decays geometrically so long runs stay bounded.
  double prune_threshold = 1e-15;
};

struct FtChainState {
  int m = 0;
  double residual_weight = 1.0;      // prod_{j<=m} (1 - theta_j)
  WeightedDiscreteMeasure p0;        // initial measure, weight residual_weight
  std::vector<double> atoms;         // accumulated innovation atoms
  std::vector<double> weights;

  // residual_weight * P_0 + accumulated innovation, as one measure.
  WeightedDiscreteMeasure current() const;
};

FtChainState ft_initial(WeightedDiscreteMeasure p0);

void ft_step(const FtConfig& config, FtChainState& state, Rng& rng);
void ft_step(const FtConfig& config, FtChainState& state,
             const Innovation& inn);

// ---------------------------------------------------------------------------
// Scalar functional chains M_m = theta_m T_m + (1 - theta_m) M_{m-1} with
// T_m = sum_i q_{m,i} g(Y_{m,i}); the mean chain is g = identity.
// ---------------------------------------------------------------------------

struct ScalarChainConfig {
  int n = 1;
  BaseMeasure base;
};

struct ScalarChainState {
  int m = 0;
  double value = 0.0;
};

void mean_chain_step(const ScalarChainConfig& config, ScalarChainState& state,
                     Rng& rng);
void mean_chain_step(const ScalarChainConfig& config, ScalarChainState& state,
                     const Innovation& inn);

void functional_chain_step(const ScalarChainConfig& config,
                           ScalarChainState& state,
                           const std::function<double(double)>& g, Rng& rng);
void functional_chain_step(const ScalarChainConfig& config,
                           ScalarChainState& state,
                           const std::function<double(double)>& g,
                           const Innovation& inn);

// ---------------------------------------------------------------------------
// Mixture-density chain on a grid:
// f_m(x) = theta_m sum_i q_{m,i} k(x, Y_{m,i}) + (1 - theta_m) f_{m-1}(x).
// ---------------------------------------------------------------------------

struct DensityChainConfig {
  int n = 1;
  BaseMeasure base;
  Kernel kernel;
};

struct DensityGridState {
  std::vector<double> grid;    // ordered x points
  std::vector<double> values;  // f_m on the grid
  int m = 0;
  // Set when the grid loses more than 5% of the kernel mass; diagnostic
  // only, the step still applies.
  bool narrow_grid_warning = false;
};

DensityGridState density_initial(std::vector<double> grid,
                                 const std::function<double(double)>& f0);

// theta supplied by the caller (W_i for the exchangeable chain, Beta(n, a)
// for the generalized Feigin-Tweedie chain); block and weights drawn inside.
void density_chain_step(const DensityChainConfig& config,
                        DensityGridState& state, double theta, Rng& rng);
void density_chain_step(const DensityChainConfig& config,
                        DensityGridState& state, const Innovation& inn);
// Convenience: also draws theta ~ Beta(n, a).
void density_chain_step(const DensityChainConfig& config,
                        DensityGridState& state, Rng& rng);

double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace mvmc

#endif  // MVMC_CHAINS_HPP_

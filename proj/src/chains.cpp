#include "mvmc/chains.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "mvmc/polya.hpp"
#include "mvmc/sampling.hpp"

namespace mvmc {

void qn_step(QnState& state, double z, Rng& rng) {
  if (!std::isfinite(z)) throw std::domain_error("qn_step: non-finite atom");
  const double w = beta_sample(1.0, static_cast<double>(state.step), rng);
  for (double& q : state.weights) q *= 1.0 - w;
  state.atoms.push_back(z);
  state.weights.push_back(w);
  renormalize_weights(state.weights);
  ++state.step;
}

QnState qn_run(int n, SourceKind source, const BaseMeasure& base, Rng& rng) {
  if (n < 1) throw std::invalid_argument("qn_run: n >= 1");
  QnState state;
  state.atoms.reserve(static_cast<std::size_t>(n));
  state.weights.reserve(static_cast<std::size_t>(n));
  if (source == SourceKind::kPolya) {
    PolyaUrn urn(base);
    for (int i = 0; i < n; ++i) qn_step(state, urn.next(rng), rng);
  } else {
    for (int i = 0; i < n; ++i) qn_step(state, base.sample(rng), rng);
  }
  return state;
}

Innovation draw_innovation(int n, const BaseMeasure& base, Rng& rng) {
  if (n < 1) throw std::invalid_argument("draw_innovation: n >= 1");
  Innovation inn;
  inn.theta =
      beta_sample(static_cast<double>(n), base.total_mass(), rng);
  inn.weights = dirichlet_uniform_weights(n, rng);
  inn.atoms = polya_block(base, n, rng);
  return inn;
}

double innovation_value(const Innovation& inn) {
  double t = 0.0;
  for (std::size_t i = 0; i < inn.atoms.size(); ++i) {
    t += inn.weights[i] * inn.atoms[i];
  }
  return t;
}

double innovation_value(const Innovation& inn,
                        const std::function<double(double)>& g) {
  double t = 0.0;
  for (std::size_t i = 0; i < inn.atoms.size(); ++i) {
    const double v = g(inn.atoms[i]);
    if (!std::isfinite(v)) {
      throw std::domain_error("innovation_value: g non-finite at atom");
    }
    t += inn.weights[i] * v;
  }
  return t;
}

FtChainState ft_initial(WeightedDiscreteMeasure p0) {
  FtChainState state{.m = 0,
                     .residual_weight = 1.0,
                     .p0 = std::move(p0),
                     .atoms = {},
                     .weights = {}};
  return state;
}

WeightedDiscreteMeasure FtChainState::current() const {
  std::vector<double> all_atoms;
  std::vector<double> all_weights;
  all_atoms.reserve(p0.size() + atoms.size());
  all_weights.reserve(p0.size() + atoms.size());
  if (residual_weight > 0.0) {
    for (std::size_t i = 0; i < p0.size(); ++i) {
      all_atoms.push_back(p0.atoms()[i]);
      all_weights.push_back(residual_weight * p0.weights()[i]);
    }
  }
  all_atoms.insert(all_atoms.end(), atoms.begin(), atoms.end());
  all_weights.insert(all_weights.end(), weights.begin(), weights.end());
  renormalize_weights(all_weights);
  return WeightedDiscreteMeasure(std::move(all_atoms), std::move(all_weights));
}

void ft_step(const FtConfig& config, FtChainState& state, Rng& rng) {
  ft_step(config, state, draw_innovation(config.n, config.base, rng));
}

void ft_step(const FtConfig& config, FtChainState& state,
             const Innovation& inn) {
  const double keep = 1.0 - inn.theta;
  state.residual_weight *= keep;
  for (double& w : state.weights) w *= keep;
  for (std::size_t i = 0; i < inn.atoms.size(); ++i) {
    state.atoms.push_back(inn.atoms[i]);
    state.weights.push_back(inn.theta * inn.weights[i]);
  }
  // Prune negligible atoms, then put the total mass back to 1.
  std::size_t kept = 0;
  for (std::size_t i = 0; i < state.weights.size(); ++i) {
    if (state.weights[i] >= config.prune_threshold) {
      state.atoms[kept] = state.atoms[i];
      state.weights[kept] = state.weights[i];
      ++kept;
    }
  }
  state.atoms.resize(kept);
  state.weights.resize(kept);
  if (state.residual_weight < config.prune_threshold) {
    state.residual_weight = 0.0;
  }
  double total = state.residual_weight;
  for (double w : state.weights) total += w;
  state.residual_weight /= total;
  for (double& w : state.weights) w /= total;
  ++state.m;
}

void mean_chain_step(const ScalarChainConfig& config, ScalarChainState& state,
                     Rng& rng) {
  mean_chain_step(config, state, draw_innovation(config.n, config.base, rng));
}

void mean_chain_step(const ScalarChainConfig& config, ScalarChainState& state,
                     const Innovation& inn) {
  (void)config;
  state.value = inn.theta * innovation_value(inn) +
                (1.0 - inn.theta) * state.value;
  ++state.m;
}

void functional_chain_step(const ScalarChainConfig& config,
                           ScalarChainState& state,
                           const std::function<double(double)>& g, Rng& rng) {
  functional_chain_step(config, state, g,
                        draw_innovation(config.n, config.base, rng));
}

void functional_chain_step(const ScalarChainConfig& config,
                           ScalarChainState& state,
                           const std::function<double(double)>& g,
                           const Innovation& inn) {
  (void)config;
  state.value = inn.theta * innovation_value(inn, g) +
                (1.0 - inn.theta) * state.value;
  ++state.m;
}

DensityGridState density_initial(std::vector<double> grid,
                                 const std::function<double(double)>& f0) {
  if (grid.size() < 2) throw std::invalid_argument("density grid too small");
  DensityGridState state;
  state.values.reserve(grid.size());
  for (double x : grid) state.values.push_back(f0(x));
  state.grid = std::move(grid);
  for (double v : state.values) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("density_initial: f0 must be nonnegative");
    }
  }
  return state;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("trapezoid: need matching n >= 2");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    acc += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  }
  return acc;
}

void density_chain_step(const DensityChainConfig& config,
                        DensityGridState& state, const Innovation& inn) {
  const auto& k = config.kernel.eval;
  for (std::size_t j = 0; j < state.grid.size(); ++j) {
    double mix = 0.0;
    for (std::size_t i = 0; i < inn.atoms.size(); ++i) {
      mix += inn.weights[i] * k(state.grid[j], inn.atoms[i]);
    }
    state.values[j] = inn.theta * mix + (1.0 - inn.theta) * state.values[j];
  }
  ++state.m;
  const double total = trapezoid(state.grid, state.values);
  if (1.0 - total > 0.05) state.narrow_grid_warning = true;
}

void density_chain_step(const DensityChainConfig& config,
                        DensityGridState& state, double theta, Rng& rng) {
  Innovation inn;
  inn.theta = theta;
  inn.weights = dirichlet_uniform_weights(config.n, rng);
  inn.atoms = polya_block(config.base, config.n, rng);
  density_chain_step(config, state, inn);
}

void density_chain_step(const DensityChainConfig& config,
                        DensityGridState& state, Rng& rng) {
  density_chain_step(config, state,
                     draw_innovation(config.n, config.base, rng));
}

}  // namespace mvmc

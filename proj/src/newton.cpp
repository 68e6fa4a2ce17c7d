#include "mvmc/newton.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace mvmc {

double NewtonState::mass() const {
  double m = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) m += q[i] * mu[i];
  return m;
}

namespace {

std::vector<double> trapezoid_weights(const std::vector<double>& grid) {
  if (grid.size() < 2) {
    throw std::invalid_argument("newton: grid needs at least 2 points");
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] < grid[i + 1])) {
      throw std::invalid_argument("newton: grid must be strictly increasing");
    }
  }
  std::vector<double> mu(grid.size(), 0.0);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double h = 0.5 * (grid[i + 1] - grid[i]);
    mu[i] += h;
    mu[i + 1] += h;
  }
  return mu;
}

void normalize_state(NewtonState& state) {
  const double m = state.mass();
  if (!(m > 0.0)) throw std::invalid_argument("newton: zero total mass");
  for (double& v : state.q) v /= m;
}

}  // namespace

NewtonState newton_uniform_prior(std::vector<double> grid) {
  NewtonState state;
  state.mu = trapezoid_weights(grid);
  state.grid = std::move(grid);
  state.q.assign(state.grid.size(), 1.0);
  normalize_state(state);
  return state;
}

NewtonState newton_prior(std::vector<double> grid,
                         const std::function<double(double)>& q0) {
  NewtonState state;
  state.mu = trapezoid_weights(grid);
  state.grid = std::move(grid);
  state.q.reserve(state.grid.size());
  for (double theta : state.grid) {
    const double v = q0(theta);
    if (!(v >= 0.0)) {
      throw std::invalid_argument("newton: prior must be nonnegative");
    }
    state.q.push_back(v);
  }
  normalize_state(state);
  return state;
}

NewtonState newton_atom_prior(std::vector<double> atoms,
                              std::vector<double> probs) {
  if (atoms.empty() || atoms.size() != probs.size()) {
    throw std::invalid_argument("newton: atoms/probs size mismatch");
  }
  NewtonState state;
  state.grid = std::move(atoms);
  state.mu.assign(state.grid.size(), 1.0);
  state.q = std::move(probs);
  for (double v : state.q) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("newton: prior must be nonnegative");
    }
  }
  normalize_state(state);
  return state;
}

WeightSchedule WeightSchedule::one_over_i() { return WeightSchedule({}); }

WeightSchedule WeightSchedule::custom(std::vector<double> weights) {
  for (double w : weights) {
    if (!(w > 0.0 && w < 1.0)) {
      throw std::invalid_argument("newton: custom weights must be in (0,1)");
    }
  }
  return WeightSchedule(std::move(weights));
}

double WeightSchedule::weight(int i) const {
  if (i < 1) throw std::invalid_argument("newton: step index >= 1");
  if (custom_.empty()) return 1.0 / static_cast<double>(i);
  if (static_cast<std::size_t>(i) > custom_.size()) {
    throw std::invalid_argument("newton: custom schedule exhausted");
  }
  return custom_[static_cast<std::size_t>(i - 1)];
}

void newton_update(NewtonState& state, double x, const Kernel& kernel,
                   const WeightSchedule& schedule) {
  if (!std::isfinite(x)) throw std::domain_error("newton: non-finite datum");
  const int i = state.step + 1;
  const double w = schedule.weight(i);
  const std::size_t g = state.grid.size();
  std::vector<double> kx(g);
  double denom = 0.0;
  for (std::size_t j = 0; j < g; ++j) {
    kx[j] = kernel.eval(x, state.grid[j]);
    denom += kx[j] * state.q[j] * state.mu[j];
  }
  if (!(denom > 1e-300)) {
    std::ostringstream os;
    os << "newton: observation x=" << x
       << " incompatible with current estimate (vanishing denominator)";
    throw std::domain_error(os.str());
  }
  for (std::size_t j = 0; j < g; ++j) {
    state.q[j] = (1.0 - w) * state.q[j] + w * kx[j] * state.q[j] / denom;
  }
  normalize_state(state);
  state.step = i;
}

NewtonState newton_run(std::span<const double> data, const Kernel& kernel,
                       NewtonState prior, const WeightSchedule& schedule,
                       const std::function<void(const NewtonState&)>& observer) {
  NewtonState state = std::move(prior);
  for (double x : data) {
    newton_update(state, x, kernel, schedule);
    if (observer) observer(state);
  }
  return state;
}

std::vector<double> predictive_density(const NewtonState& state,
                                       const Kernel& kernel,
                                       std::span<const double> x_grid) {
  std::vector<double> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    double f = 0.0;
    for (std::size_t j = 0; j < state.grid.size(); ++j) {
      f += kernel.eval(x, state.grid[j]) * state.q[j] * state.mu[j];
    }
    out.push_back(f);
  }
  return out;
}

void expected_chain_update(PredictiveUpdate& state, double theta) {
  const int i = state.step + 1;
  const double w = 1.0 / static_cast<double>(i);
  for (double& v : state.weights) v *= 1.0 - w;
  state.atoms.push_back(theta);
  state.weights.push_back(w);
  state.step = i;
}

}  // namespace mvmc

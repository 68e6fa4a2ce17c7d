#ifndef MVMC_NEWTON_HPP_
#define MVMC_NEWTON_HPP_

#include <functional>
#include <span>
#include <vector>

#include "mvmc/kernel.hpp"

namespace mvmc {

// Recursive mixing-density estimate on a discretized parameter grid. q holds
// density values with respect to the grid measure mu (trapezoid weights for a
// continuous grid, counting weights for an atom grid), so every integral is a
// dot product. The estimate is renormalized after each update to absorb
// quadrature drift.
struct NewtonState {
  std::vector<double> grid;  // ordered theta points
  std::vector<double> mu;    // grid measure weights
  std::vector<double> q;     // density values w.r.t. mu
  int step = 0;              // observations consumed

  double mass() const;  // integral of q against mu
};

// Uniform initial estimate on a trapezoid grid.
NewtonState newton_uniform_prior(std::vector<double> grid);
// Initial estimate proportional to q0 on a trapezoid grid.
NewtonState newton_prior(std::vector<double> grid,
                         const std::function<double(double)>& q0);
// Discrete parameter space: counting measure on the given atoms.
NewtonState newton_atom_prior(std::vector<double> atoms,
                              std::vector<double> probs);

// w_i for step i >= 1. Default is w_i = 1/i, so the first update is a pure
// Bayes step.
class WeightSchedule {
 public:
  static WeightSchedule one_over_i();
  static WeightSchedule custom(std::vector<double> weights);

  double weight(int i) const;

 private:
  explicit WeightSchedule(std::vector<double> weights)
      : custom_(std::move(weights)) {}
  std::vector<double> custom_;  // empty means 1/i
};

// One observation:
//   q <- (1 - w_i) q + w_i k(x, .) q / int k(x, theta) q(theta) mu(dtheta).
// Throws when the denominator underflows (observation incompatible with the
// current estimate).
void newton_update(NewtonState& state, double x, const Kernel& kernel,
                   const WeightSchedule& schedule = WeightSchedule::one_over_i());

// Folds newton_update over the data; the observer (when set) sees the state
// after every update.
NewtonState newton_run(
    std::span<const double> data, const Kernel& kernel, NewtonState prior,
    const WeightSchedule& schedule = WeightSchedule::one_over_i(),
    const std::function<void(const NewtonState&)>& observer = nullptr);

// Mixture density f(x) = int k(x, theta) q(theta) mu(dtheta) on an x grid.
std::vector<double> predictive_density(const NewtonState& state,
                                       const Kernel& kernel,
                                       std::span<const double> x_grid);

// Expected chain Q_i = w_i d_{theta_i} + (1 - w_i) Q_{i-1} with w_i = 1/i:
// after i steps every atom carries weight exactly 1/i.
struct PredictiveUpdate {
  std::vector<double> atoms;
  std::vector<double> weights;
  int step = 0;
};

void expected_chain_update(PredictiveUpdate& state, double theta);

}  // namespace mvmc

#endif  // MVMC_NEWTON_HPP_

#include "mvmc/measure.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mvmc {

WeightedDiscreteMeasure::WeightedDiscreteMeasure(std::vector<double> atoms,
                                                 std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.size() != weights_.size()) {
    throw std::invalid_argument("measure: atoms/weights size mismatch");
  }
  if (atoms_.empty()) {
    throw std::invalid_argument("measure: needs at least one atom");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) {
      throw std::invalid_argument("measure: weights must be nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("measure: weights must sum to 1");
  }
}

WeightedDiscreteMeasure WeightedDiscreteMeasure::point_mass(double x) {
  return WeightedDiscreteMeasure({x}, {1.0});
}

double WeightedDiscreteMeasure::mass_in(double lo, double hi) const {
  double m = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i] >= lo && atoms_[i] <= hi) m += weights_[i];
  }
  return m;
}

void renormalize_weights(std::vector<double>& weights) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  if (!(sum > 0.0)) {
    throw std::invalid_argument("renormalize: nonpositive total weight");
  }
  for (double& w : weights) w /= sum;
}

double integrate(const std::function<double(double)>& g,
                 const WeightedDiscreteMeasure& mu) {
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double v = g(mu.atoms()[i]);
    if (!std::isfinite(v)) {
      throw std::domain_error("integrate: g non-finite at atom");
    }
    acc += mu.weights()[i] * v;
  }
  return acc;
}

}  // namespace mvmc

#ifndef MVMC_MEASURE_HPP_
#define MVMC_MEASURE_HPP_

#include <functional>
#include <vector>

namespace mvmc {

// Finitely supported probability measure: atoms with nonnegative weights
// summing to 1 (within 1e-12, checked at construction). The finitary state
// of every chain in this library.
class WeightedDiscreteMeasure {
 public:
  WeightedDiscreteMeasure(std::vector<double> atoms,
                          std::vector<double> weights);

  static WeightedDiscreteMeasure point_mass(double x);

  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return atoms_.size(); }

  // Total weight on atoms inside [lo, hi].
  double mass_in(double lo, double hi) const;

 private:
  std::vector<double> atoms_;
  std::vector<double> weights_;
};

// Divides a raw weight vector by its sum; throws if the sum is not positive.
void renormalize_weights(std::vector<double>& weights);

// Sum of weights[i] * g(atoms[i]); throws if g is non-finite at an atom.
double integrate(const std::function<double(double)>& g,
                 const WeightedDiscreteMeasure& mu);

}  // namespace mvmc

#endif  // MVMC_MEASURE_HPP_

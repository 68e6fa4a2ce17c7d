#ifndef MVMC_BASE_MEASURE_HPP_
#define MVMC_BASE_MEASURE_HPP_

#include <string>
#include <vector>

#include "mvmc/rng.hpp"

namespace mvmc {

enum class BaseFamily { kUniform, kGaussian, kCauchy, kDiscrete };

// The parameter measure alpha = a * alpha0: a sampleable probability
// distribution alpha0 together with a total mass a > 0. Sampling always
// draws from alpha0; the mass enters predictive weights, Beta parameters
// and the moment formulas.
class BaseMeasure {
 public:
  static BaseMeasure Uniform(double lo, double hi, double total_mass = 1.0);
  static BaseMeasure Gaussian(double mean, double sd, double total_mass = 1.0);
  static BaseMeasure Cauchy(double location, double scale,
                            double total_mass = 1.0);
  static BaseMeasure Discrete(std::vector<double> atoms,
                              std::vector<double> probs,
                              double total_mass = 1.0);

  BaseFamily family() const { return family_; }
  double total_mass() const { return total_mass_; }
  double param1() const { return p1_; }  // lo / mean / location
  double param2() const { return p2_; }  // hi / sd / scale
  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& probs() const { return probs_; }

  // One draw from alpha0 (not scaled by the total mass).
  double sample(Rng& rng) const;

  // E|Y| under alpha0; +inf for the Cauchy family.
  double mean_abs() const;
  // E[Y] under alpha0; NaN for the Cauchy family.
  double mean() const;

  std::string describe() const;

 private:
  BaseMeasure(BaseFamily family, double total_mass, double p1, double p2,
              std::vector<double> atoms, std::vector<double> probs);

  BaseFamily family_;
  double total_mass_;
  double p1_ = 0.0;
  double p2_ = 0.0;
  std::vector<double> atoms_;
  std::vector<double> probs_;
};

}  // namespace mvmc

#endif  // MVMC_BASE_MEASURE_HPP_

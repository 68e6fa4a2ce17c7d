#ifndef MVMC_SAMPLING_HPP_
#define MVMC_SAMPLING_HPP_

#include <vector>

#include "mvmc/base_measure.hpp"
#include "mvmc/rng.hpp"

namespace mvmc {

// One draw from alpha0.
inline double sample_base(const BaseMeasure& measure, Rng& rng) {
  return measure.sample(rng);
}

// Beta(alpha, beta) draw. Beta(1, 0) returns exactly 1: the chains need
// W_1 = 1 almost surely. Any other nonpositive parameter is an error.
double beta_sample(double alpha, double beta, Rng& rng);

// Dirichlet(1,...,1) weight vector of length n via stick breaking with
// xi_i ~ Beta(1, n-i). The vector is renormalized by its sum so downstream
// simplex checks hold at 1e-12.
std::vector<double> dirichlet_uniform_weights(int n, Rng& rng);

}  // namespace mvmc

#endif  // MVMC_SAMPLING_HPP_

#include "mvmc/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace mvmc {

double beta_sample(double alpha, double beta, Rng& rng) {
  if (alpha == 1.0 && beta == 0.0) return 1.0;
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("beta_sample: parameters must be positive");
  }
  // Inverse-CDF shortcuts when one parameter is 1; gamma ratio otherwise.
  if (alpha == 1.0) return 1.0 - std::pow(1.0 - rng.uniform01(), 1.0 / beta);
  if (beta == 1.0) return std::pow(rng.uniform01(), 1.0 / alpha);
  const double x = rng.gamma(alpha);
  const double y = rng.gamma(beta);
  return x / (x + y);
}

std::vector<double> dirichlet_uniform_weights(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("dirichlet_uniform_weights: n >= 1");
  std::vector<double> w(static_cast<std::size_t>(n));
  double stick = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    const double xi = beta_sample(1.0, static_cast<double>(n - 1 - i), rng);
    w[static_cast<std::size_t>(i)] = xi * stick;
    stick *= 1.0 - xi;
  }
  w[static_cast<std::size_t>(n - 1)] = stick;  // xi_n = Beta(1,0) = 1
  double sum = 0.0;
  for (double v : w) sum += v;
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace mvmc

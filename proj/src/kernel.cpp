#include "mvmc/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace mvmc {

Kernel gaussian_kernel(double sd) {
  if (!(sd > 0.0)) throw std::invalid_argument("gaussian_kernel: sd > 0");
  const double inv_sd = 1.0 / sd;
  const double norm = inv_sd / std::sqrt(2.0 * M_PI);
  Kernel kernel;
  kernel.eval = [inv_sd, norm](double x, double theta) {
    const double z = (x - theta) * inv_sd;
    return norm * std::exp(-0.5 * z * z);
  };
  kernel.bounded = true;
  kernel.dominating_measure = "lebesgue";
  return kernel;
}

}  // namespace mvmc

#ifndef MVMC_KERNEL_HPP_
#define MVMC_KERNEL_HPP_

#include <functional>
#include <string>

namespace mvmc {

// Mixture kernel k(x, theta): x -> k(x, theta) is a density for each fixed
// theta. The dominating-measure note is documentation carried with the
// kernel; the boundedness flag records the hypothesis needed for L1
// convergence of the density chains.
struct Kernel {
  std::function<double(double x, double theta)> eval;
  bool bounded = true;
  std::string dominating_measure = "lebesgue";
};

Kernel gaussian_kernel(double sd);

}  // namespace mvmc

#endif  // MVMC_KERNEL_HPP_

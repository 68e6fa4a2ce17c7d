#ifndef MVMC_QUADRATURE_HPP_
#define MVMC_QUADRATURE_HPP_

#include <functional>

namespace mvmc {

// Adaptive Simpson on [a, b] with an absolute error target. Subintervals
// that still miss their local budget at max_depth contribute to a defect
// total; if it exceeds abs_tol the routine throws, reporting the achieved
// tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth = 32);

}  // namespace mvmc

#endif  // MVMC_QUADRATURE_HPP_

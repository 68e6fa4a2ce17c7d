#ifndef MVMC_ERGODICITY_HPP_
#define MVMC_ERGODICITY_HPP_

#include <optional>
#include <span>
#include <vector>

#include "mvmc/base_measure.hpp"
#include "mvmc/rng.hpp"

namespace mvmc {

// Parameters of the Foster-Lyapunov drift for the mean functional chain.
// V(x) = 1 + |x| when s_exponent = 1, else V(x) = 1 + |x|^s. mean_abs_y is
// E|Y_{1,1}| for s = 1 and E|Y_{1,1}|^s otherwise; it is supplied by the
// caller (computed from alpha0 or known analytically).
struct DriftSpec {
  int n = 1;
  double a = 1.0;
  double mean_abs_y = 0.0;
  double lambda = 0.0;
  double s_exponent = 1.0;

  void validate() const;
};

// Admissible lower endpoint for lambda: E[(1-theta)^s] for theta ~ Beta(n,a);
// equals a/(n+a) at s = 1.
double drift_lambda_lower(int n, double a, double s);

// Radius of the small set C = [-K(lambda), K(lambda)]:
//   K(lambda) = (1 - lambda + n/(n+a) E|Y|) / (lambda - a/(n+a))
// for s = 1; the s < 1 variant uses the crude bound E|T|^s <= n E|Y|^s.
double small_set_radius(const DriftSpec& spec);

// The drift constant b = 1 - lambda + (theta coefficient) * mean_abs_y.
double drift_b_constant(const DriftSpec& spec);

struct DriftPoint {
  double x = 0.0;
  double pv_estimate = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct DriftReport {
  double lambda = 0.0;
  double b = 0.0;
  double radius = 0.0;
  std::vector<DriftPoint> points;
  bool all_pass = false;
};

// Monte Carlo check of PV(x) <= lambda V(x) + b 1_C(x) + 3 s.e. on a grid.
DriftReport drift_verify(const DriftSpec& spec, const BaseMeasure& base,
                         std::span<const double> x_grid, int mc_samples,
                         Rng& rng);

// Innovation density given the block: for y != y_j,
//   f(y; y_1..y_n) = ((n-1)/pi) int_0^inf prod_j (1+t^2 d_j^2)^{-1/2}
//                    cos(sum_j arctan(t d_j)) dt,  d_j = y_j - y.
// Integrated after t = tan(u), which bounds the domain and the integrand.
struct AtomConfiguration {
  std::vector<double> atoms;
  double point = 0.0;
};

double t_density(const AtomConfiguration& config, double abs_tol = 1e-6);

struct McQuadEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Transition density of the mean chain,
//   f(z|x) = (1/B(a,n)) int_0^1 t^{n-2} (1-t)^{a-1}
//            f_T((z - (1-t)x)/t) dt,
// by outer Monte Carlo over Polya blocks and inner quadrature. n >= 2.
McQuadEstimate transition_density(int n, double a, double x, double z,
                                  const BaseMeasure& base, int mc_outer,
                                  Rng& rng, double abs_tol = 1e-5);

// Minorization lower bound eps(n) >= n/(a+n) - a K K_n(lambda)/(n-1) where K
// is the caller's bound on |f_T'|. May be negative; the caller decides
// usability. reference_n0 caps K_n(lambda) by the uniform-in-n bound
// (1 - lambda + mean_y) / (lambda - a/(a+n0)).
double epsilon_lower_bound(int n, double a, double k_deriv, double lambda,
                           double mean_y,
                           std::optional<int> reference_n0 = std::nullopt);

// Uniform-ergodicity decay (1 - eps)^m.
double tv_decay_bound(double epsilon, int m);

}  // namespace mvmc

#endif  // MVMC_ERGODICITY_HPP_

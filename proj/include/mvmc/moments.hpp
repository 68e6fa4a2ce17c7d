#ifndef MVMC_MOMENTS_HPP_
#define MVMC_MOMENTS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "mvmc/rng.hpp"

namespace mvmc {

// Rising factorial (x)_{n^1} = x(x+1)...(x+n-1); empty product for n = 0.
double pochhammer_rising(double x, int n);
// log (x)_{n^1} for x > 0, via lgamma.
double log_pochhammer_rising(double x, int n);
// Falling factorial (x)_{s_1} = x(x-1)...(x-s+1); 0 when x is an integer < s.
double falling_factorial(double x, int s);

// Stirling numbers cached to max_order() with exact 128-bit integers and read
// out as doubles. First kind is unsigned.
class StirlingTables {
 public:
  static constexpr int max_order() { return 30; }
  static const StirlingTables& instance();

  double first_kind_abs(int r, int t) const;  // |s(r,t)|
  double second_kind(int t, int s) const;     // S(t,s)

  // Coefficient of (j)_{s_1} in the expansion of (j)_{r^1}:
  //   sum_t |s(r,t)| S(t,s).
  double rising_to_falling(int r, int s) const;

 private:
  StirlingTables();
  std::vector<std::vector<unsigned __int128>> s1_, s2_;
};

// Moment query for a measurable partition B_1,...,B_k: cell masses
// (alpha(B_1),...,alpha(B_k)) summing to the total mass a, and integer
// orders (r_1,...,r_k).
struct MomentQuery {
  int n = 1;
  std::vector<double> masses;
  std::vector<int> orders;

  double total_mass() const;
  void validate() const;
};

// Closed form
//   C_n^{(s_1,...,s_k)} = prod_i (alpha(B_i))_{s_i^1} * (n)_{sigma_1} / (a)_{sigma^1},
// sigma = sum s_i; vanishes when sigma > n.
double c_coefficient(int n, std::span<const double> masses,
                     std::span<const int> s);

// Verifies that the closed form satisfies the one-step recursion
//   C_{n+1}^{(s)} = (n+1)(alpha(B_i)+s_i-1)/(a+n) C_n^{(s-e_i)}
//                 + (n+1)/(a+n) C_n^{(s)}
// for every coordinate i with s_i >= 1, within a relative tolerance.
bool c_recursion_check(int n, std::span<const double> masses,
                       std::span<const int> s, double rel_tol = 1e-10);

// Exact finite-n mixed moment E[prod_i (Q_n(B_i))^{r_i}] via the double
// Stirling expansion over the C coefficients, divided by (n)_{(sum r)^1}.
double polya_mixed_moment(const MomentQuery& query);

// n -> infinity limit: prod_i (alpha(B_i))_{r_i^1} / (a)_{(sum r)^1}.
double dirichlet_moment(std::span<const double> masses,
                        std::span<const int> orders);

// Independent oracles for polya_mixed_moment.
//
// exact_sum evaluates the defining sum over the composition set: partition
// pmf times the conditional Dirichlet moment with empirical parameters.
// Budget: n <= 12, k <= 3.
double brute_force_moment_exact(const MomentQuery& query);

// monte_carlo simulates Q_n with a Polya source over a discrete base with
// cell probabilities masses/a and averages the product of powers.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};
McEstimate brute_force_moment_mc(const MomentQuery& query,
                                 std::uint64_t samples, Rng& rng);

}  // namespace mvmc

#endif  // MVMC_MOMENTS_HPP_

#ifndef MVMC_POLYA_HPP_
#define MVMC_POLYA_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mvmc/base_measure.hpp"
#include "mvmc/rng.hpp"

namespace mvmc {

// Blackwell-MacQueen urn for a Polya sequence with parameter alpha = a*alpha0:
// the (j+1)-th draw is fresh from alpha0 with probability a/(a+j), otherwise a
// uniformly chosen past point. Repeats are kept as atom -> count entries so a
// long-lived urn over a discrete base stays O(distinct atoms).
class PolyaUrn {
 public:
  explicit PolyaUrn(BaseMeasure base);

  // One predictive draw; the returned point joins the history.
  double next(Rng& rng);

  std::uint64_t draws() const { return total_; }
  const std::vector<std::pair<double, std::uint64_t>>& atom_counts() const {
    return counts_;
  }
  const BaseMeasure& base() const { return base_; }

 private:
  BaseMeasure base_;
  std::vector<std::pair<double, std::uint64_t>> counts_;  // insertion order
  std::uint64_t total_ = 0;
};

// One fresh urn, n draws. Blocks from successive calls are independent.
std::vector<double> polya_block(const BaseMeasure& base, int n, Rng& rng);

// Exact cell-count pmf of a Polya sequence over a measurable partition with
// masses (alpha(B_1),...,alpha(B_k)) summing to a:
//   P(counts) = (n choose j_1...j_k) prod_i (alpha(B_i))_{j_i ^} / (a)_{n ^}
// computed with log-gamma and exponentiated once.
double polya_partition_pmf(std::span<const double> masses,
                           std::span<const int> counts);

}  // namespace mvmc

#endif  // MVMC_POLYA_HPP_

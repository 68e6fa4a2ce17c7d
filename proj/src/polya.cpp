#include "mvmc/polya.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mvmc {

PolyaUrn::PolyaUrn(BaseMeasure base) : base_(std::move(base)) {}

double PolyaUrn::next(Rng& rng) {
  const double a = base_.total_mass();
  const double j = static_cast<double>(total_);
  // The first draw is fresh with probability one and consumes no branch
  // uniform, so an n=1 block is exactly one alpha0 draw.
  const double u = total_ == 0 ? -1.0 : rng.uniform01() * (a + j);
  double drawn;
  if (u < a) {
    drawn = base_.sample(rng);
    // Continuous families never tie (a.s.), so only discrete bases merge.
    if (base_.family() == BaseFamily::kDiscrete) {
      for (auto& [atom, count] : counts_) {
        if (atom == drawn) {
          ++count;
          ++total_;
          return drawn;
        }
      }
    }
    counts_.emplace_back(drawn, 1);
  } else {
    // Uniform pick among the j past points.
    auto target = static_cast<std::uint64_t>(u - a);
    if (target >= total_) target = total_ - 1;
    std::uint64_t cum = 0;
    std::size_t idx = 0;
    for (; idx + 1 < counts_.size(); ++idx) {
      cum += counts_[idx].second;
      if (target < cum) break;
    }
    drawn = counts_[idx].first;
    ++counts_[idx].second;
  }
  ++total_;
  return drawn;
}

std::vector<double> polya_block(const BaseMeasure& base, int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("polya_block: n >= 1");
  PolyaUrn urn(base);
  std::vector<double> block(static_cast<std::size_t>(n));
  for (auto& y : block) y = urn.next(rng);
  return block;
}

double polya_partition_pmf(std::span<const double> masses,
                           std::span<const int> counts) {
  if (masses.empty() || masses.size() != counts.size()) {
    throw std::invalid_argument("partition pmf: masses/counts size mismatch");
  }
  double a = 0.0;
  int n = 0;
  for (double m : masses) {
    if (!(m > 0.0)) {
      throw std::invalid_argument("partition pmf: masses must be positive");
    }
    a += m;
  }
  for (int c : counts) {
    if (c < 0) throw std::invalid_argument("partition pmf: negative count");
    n += c;
  }
  double logp = std::lgamma(n + 1.0) - std::lgamma(a + n) + std::lgamma(a);
  for (std::size_t i = 0; i < masses.size(); ++i) {
    logp += std::lgamma(masses[i] + counts[i]) - std::lgamma(masses[i]) -
            std::lgamma(counts[i] + 1.0);
  }
  return std::exp(logp);
}

}  // namespace mvmc

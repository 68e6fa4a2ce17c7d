#ifndef MVMC_RNG_HPP_
#define MVMC_RNG_HPP_

#include <cstdint>

namespace mvmc {

// Deterministic splittable generator: xoshiro256++ seeded through splitmix64.
// A child stream is a pure function of the parent's construction seed and an
// index, so replica k of a batch sees the same stream regardless of thread
// count or scheduling order. All distributions are hand-rolled on top of
// next_u64() to keep streams bit-identical across platforms and standard
// libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent child stream derived from (construction seed, index).
  Rng split(std::uint64_t index) const;

  std::uint64_t next_u64();

  double uniform01();  // [0, 1)
  double uniform(double lo, double hi);
  double gaussian(double mean, double sd);
  double cauchy(double location, double scale);
  double exponential();          // rate 1
  double gamma(double shape);    // scale 1, shape > 0

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

}  // namespace mvmc

#endif  // MVMC_RNG_HPP_

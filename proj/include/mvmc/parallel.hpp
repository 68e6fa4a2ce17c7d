#ifndef MVMC_PARALLEL_HPP_
#define MVMC_PARALLEL_HPP_

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace mvmc {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Results are stored
// by index, so the output does not depend on thread count or scheduling;
// callers derive per-index child generators for the same reason.
template <typename T>
std::vector<T> parallel_map(std::size_t n, int threads,
                            const std::function<T(std::size_t)>& fn) {
  std::vector<T> results(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += workers) results[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace mvmc

#endif  // MVMC_PARALLEL_HPP_

#pragma once

// Deterministic blocked reduction: the index range is cut into fixed blocks whose partial sums
// are combined in block order, so results do not depend on the worker count.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace geozeta {

/// Worker count: GEOZETA_THREADS if set (>= 1), else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("GEOZETA_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Sums block(i) for i in [0, blocks) and returns the in-order total.
template <class R, class BlockFn>
R blocked_sum(std::size_t blocks, const BlockFn& block) {
  std::vector<R> partial(blocks, R{});
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(worker_count(), std::max<std::size_t>(blocks, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < blocks; ++i) partial[i] = block(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < blocks; i = next++) partial[i] = block(i);
      });
    }
  }
  R total{};
  for (const R& p : partial) total += p;
  return total;
}

}  // namespace geozeta

#pragma once

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace holocalc {

/// Worker cap: min(hardware threads, HOLOCALC_THREADS when set).
inline unsigned worker_count() {
  static const unsigned cached = [] {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("HOLOCALC_THREADS")) {
      const long cap = std::strtol(env, nullptr, 10);
      if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return hw > 64 ? 64u : hw;
  }();
  return cached;
}

/// Runs fn(i) for i in [0, n). Each index is evaluated exactly once; callers
/// write results into per-index slots and reduce sequentially afterwards, so
/// output does not depend on the schedule.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t threads = std::min<std::size_t>(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace holocalc

#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace conekit {

/// Worker cap: hardware concurrency, clipped by the CONEKIT_THREADS
/// environment variable when set.
inline int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("CONEKIT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

/// Run fn(begin, end) over contiguous chunks of [0, total). Chunk boundaries
/// depend only on the worker count, so chunk-ordered reductions stay
/// deterministic.
inline void parallel_chunks(std::size_t total,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
  const int workers = worker_count();
  if (workers <= 1 || total < 2048) {
    fn(0, total);
    return;
  }
  const std::size_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    const std::size_t b = std::min(total, chunk * static_cast<std::size_t>(w));
    const std::size_t e = std::min(total, b + chunk);
    if (b >= e) break;
    pool.emplace_back(fn, b, e);
  }
  for (auto& th : pool) th.join();
}

}  // namespace conekit

#pragma once

#include <cstddef>
#include <algorithm>
#include <functional>
#include <mutex>

namespace cperiod {

/// Worker count: hardware concurrency, capped by C_PERIOD_LAB_THREADS when set.
unsigned thread_count();

/// Runs body(begin, end) over contiguous chunks of [0, n). Chunk boundaries
/// depend only on n and thread_count(), so per-index results are reproducible.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

/// max over i in [0, n) of value_at(i); 0 for n = 0. The maximum does not
/// depend on evaluation order, so the result is thread-count independent.
template <class F>
double parallel_max(std::size_t n, F&& value_at) {
  double best = 0.0;
  std::mutex m;
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    double local = 0.0;
    for (std::size_t i = begin; i < end; ++i) local = std::max(local, value_at(i));
    std::lock_guard lock(m);
    best = std::max(best, local);
  });
  return best;
}

}  // namespace cperiod

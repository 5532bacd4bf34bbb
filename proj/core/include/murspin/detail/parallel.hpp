#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace murspin::detail {

/// Runs fn(i) for i in [0, count). With threads > 1 the index range is
/// split into contiguous chunks, one per worker; each index is visited
/// exactly once, so writes to per-index slots stay deterministic.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  if (threads <= 1 || count == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = std::min(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const int lo = static_cast<int>(static_cast<long long>(count) * w / workers);
    const int hi = static_cast<int>(static_cast<long long>(count) * (w + 1) / workers);
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace murspin::detail

#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace lcs {

// Static chunking over [0, n); each index is processed exactly once by a
// fixed worker, so results are independent of the worker count.
template <typename Fn>
void parallel_for(size_t n, int workers, Fn&& fn) {
  if (workers <= 1 || n < 2) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const size_t w = std::min<size_t>(static_cast<size_t>(workers), n);
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (size_t k = 0; k < w; ++k) {
    pool.emplace_back([k, w, n, &fn] {
      for (size_t i = k; i < n; i += w) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace lcs

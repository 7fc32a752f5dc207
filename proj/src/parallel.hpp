#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace penta::detail {

inline int worker_count(int requested, int jobs) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, std::min(n, jobs));
}

/// Run body(i) for i in [0, count) on a small pool. Work items must write to
/// disjoint output slots so that results do not depend on scheduling.
template <class Body>
void parallel_for(int count, int threads, Body&& body) {
  const int workers = worker_count(threads, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace penta::detail

#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace cpnet {

// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). Tasks must be independent; results should be written to
// pre-sized slots so output order does not depend on scheduling. fn must not
// throw — catch inside and record failures in the task's own slot.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (count == 0) return;
  unsigned want = threads > 0 ? static_cast<unsigned>(threads)
                              : std::thread::hardware_concurrency();
  if (want == 0) want = 1;
  if (want > count) want = static_cast<unsigned>(count);

  if (want == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(want - 1);
  for (unsigned t = 1; t < want; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace cpnet

#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "weylsums/common.hpp"

namespace weylsums {

// requested <= 0 means "use the hardware"
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(block) for block = 0..n_blocks-1 on a worker pool. Blocks are fixed
// units of work whose boundaries do not depend on the thread count; callers
// make results deterministic by storing per-block outputs and combining them
// in block order afterwards.
template <class Fn>
void run_blocks(u64 n_blocks, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (n_blocks == 0) return;
  if (threads == 1 || n_blocks == 1) {
    for (u64 b = 0; b < n_blocks; ++b) fn(b);
    return;
  }
  std::atomic<u64> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  auto worker = [&] {
    for (;;) {
      u64 b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= n_blocks || failed.load(std::memory_order_relaxed)) return;
      try {
        fn(b);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  int n_workers = static_cast<int>(std::min<u64>(static_cast<u64>(threads), n_blocks));
  pool.reserve(static_cast<size_t>(n_workers));
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace weylsums

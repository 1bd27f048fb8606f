#pragma once

// Deterministic fork-join over a fixed task list.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace so3 {

/// Number of workers for a requested count; 0 means hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [0, tasks) on up to `threads` workers. Tasks must
/// write only to their own slots; callers combine results in index order,
/// which keeps every reduction independent of the thread count. The first
/// exception thrown by a task is rethrown after all workers join.
template <class Fn>
void parallel_for(std::size_t tasks, unsigned threads, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), tasks));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks) return;
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(tasks);
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

/// Splits [0, n) into fixed blocks of `block` indices. The block layout
/// depends only on n, never on the worker count.
struct BlockRange {
  std::size_t begin;
  std::size_t end;
};

inline std::vector<BlockRange> fixed_blocks(std::size_t n, std::size_t block) {
  std::vector<BlockRange> out;
  for (std::size_t b = 0; b < n; b += block) out.push_back({b, std::min(n, b + block)});
  return out;
}

}  // namespace so3

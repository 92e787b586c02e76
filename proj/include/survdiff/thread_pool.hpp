#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace survdiff {

// Worker count: SURVDIFF_THREADS if set (clamped to >= 1), else the
// hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("SURVDIFF_THREADS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, count) across up to worker_count() threads.
// Work is claimed from a shared atomic counter, so scheduling is dynamic,
// but fn must make its result depend only on i (our callers derive all
// randomness from per-index seeds), keeping output independent of the
// thread count.  The first exception thrown by any invocation is rethrown.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::min<std::size_t>(worker_count(), count == 0 ? 1 : count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count || failed.load(std::memory_order_relaxed)) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace survdiff

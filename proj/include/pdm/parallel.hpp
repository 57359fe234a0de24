#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pdm {

// Worker count: PDM_THREADS if set to a positive integer, otherwise the hardware concurrency.
inline unsigned thread_count() {
  if (const char* env = std::getenv("PDM_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(begin, end) over disjoint chunks of [0, n). Exceptions from workers are rethrown.
template <class F>
void parallel_for(size_t n, F&& fn, size_t min_chunk = 1024) {
  unsigned workers = thread_count();
  size_t chunks = std::min<size_t>(workers, (n + min_chunk - 1) / std::max<size_t>(min_chunk, 1));
  if (chunks <= 1) {
    fn(size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex m;
  size_t step = (n + chunks - 1) / chunks;
  for (size_t c = 0; c < chunks; ++c) {
    size_t b = c * step, e = std::min(n, b + step);
    if (b >= e) break;
    pool.emplace_back([&, b, e] {
      try {
        fn(b, e);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// Runs task(k) for k in [0, n) on a bounded pool; each task writes only its own output slot.
template <class F>
void parallel_tasks(size_t n, F&& task) {
  unsigned workers = std::min<size_t>(thread_count(), n);
  if (workers <= 1) {
    for (size_t k = 0; k < n; ++k) task(k);
    return;
  }
  std::mutex m;
  size_t next = 0;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t k;
        {
          std::lock_guard<std::mutex> lock(m);
          if (next >= n || err) return;
          k = next++;
        }
        try {
          task(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace pdm

#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace corrnet {

// Runs fn(0..n-1) on up to `threads` workers with static contiguous chunks.
// Results must be written to preallocated per-index slots; chunking and the
// index order inside each chunk are fixed, so output never depends on the
// schedule. If several indices throw, the exception of the smallest index is
// rethrown after all workers join.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (threads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  struct Failure {
    std::size_t index;
    std::exception_ptr error;
  };
  std::vector<Failure> failures(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    pool.emplace_back([&, w, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) {
        try {
          fn(i);
        } catch (...) {
          failures[w] = {i, std::current_exception()};
          return;  // first failure in this chunk is the earliest one
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  const Failure* first = nullptr;
  for (const Failure& f : failures) {
    if (f.error && (!first || f.index < first->index)) first = &f;
  }
  if (first) std::rethrow_exception(first->error);
}

}  // namespace corrnet

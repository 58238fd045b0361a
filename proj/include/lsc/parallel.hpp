#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lsc {

// Static contiguous split of [0, count) over at most `threads` workers.
// Each index is processed exactly once; callers make results deterministic
// by writing to per-index slots, so the worker count never changes output.
template <typename Body>
void parallel_for(size_t count, unsigned threads, Body&& body) {
  if (threads <= 1 || count < 2) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const size_t workers = std::min<size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_lock;
  for (size_t w = 0; w < workers; ++w) {
    const size_t begin = count * w / workers;
    const size_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end]() {
      try {
        for (size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> hold(error_lock);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace lsc

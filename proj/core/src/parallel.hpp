#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace freesum::detail {

/// Runs f(0..n-1) on up to `threads` workers; work items are claimed dynamically.
template <typename F>
void parallel_for(std::size_t n, std::size_t threads, F&& f) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads && t < n; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace freesum::detail

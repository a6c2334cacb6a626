#pragma once

// Index-parallel loop. Each index is evaluated exactly once and results are
// written by index, so the output order never depends on scheduling.

#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace antibunch {

// Thread count: explicit value, else ANTIBUNCH_THREADS, else the config
// value, else the hardware concurrency (at least 1).
int resolve_threads(std::optional<int> flag, std::optional<int> config = std::nullopt);

template <class F>
void parallel_for(std::size_t n, int threads, F&& fn) {
  const std::size_t t = std::min<std::size_t>(n, threads > 1 ? static_cast<std::size_t>(threads) : 1);
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (std::size_t k = 0; k < t; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  // lowest failing index wins, as in the serial loop
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace antibunch

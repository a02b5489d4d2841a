#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rfk {

/// Worker count from FOURIER_KNOTS_JOBS, falling back to the number of logical cores.
int default_jobs();

/// Runs body(i) for i in [0, n) on `jobs` threads. Work is handed out by index, so any
/// per-index result written to slot i is independent of the thread count.
/// The first exception thrown by a body is rethrown after all workers stop.
template <class Body>
void parallel_for(std::int64_t n, int jobs, Body&& body) {
  if (jobs <= 1 || n <= 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const auto count = static_cast<std::int64_t>(jobs) < n ? jobs : static_cast<int>(n);
    pool.reserve(static_cast<std::size_t>(count));
    for (int w = 0; w < count; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rfk

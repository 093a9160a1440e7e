#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace schur {

namespace detail {
inline std::atomic<unsigned>& thread_override() {
  static std::atomic<unsigned> value{0};
  return value;
}
}  // namespace detail

/// Worker count: set_thread_count() if called, else SCHURNORM_THREADS,
/// else the hardware concurrency.
inline unsigned thread_count() {
  if (unsigned t = detail::thread_override().load()) return t;
  if (const char* env = std::getenv("SCHURNORM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline void set_thread_count(unsigned n) { detail::thread_override().store(n); }

/// Runs body(i) for i in [0, count) on up to thread_count() threads. The
/// first exception thrown by any task is rethrown on the caller.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace schur

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace deltakit {

/// Number of worker threads used when a caller passes 0.
inline unsigned default_threads()
{
  unsigned const n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Runs body(i) for i in [0, count). Work items are claimed dynamically, so
/// bodies must write only to slots owned by their index. The first exception
/// thrown by any body is rethrown on the calling thread.
template <typename Body> void parallel_for(std::size_t count, unsigned threads, Body &&body)
{
  if (threads == 0) { threads = default_threads(); }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) { body(i); }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) { failure = std::current_exception(); }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) { pool.emplace_back(worker); }
  for (auto &th : pool) { th.join(); }
  if (failure) { std::rethrow_exception(failure); }
}

} // namespace deltakit

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace excess_kit {

/// Runs fn(i) for every i in [0, tasks) on up to `threads` workers. Callers
/// write results into slot i, so the aggregate never depends on scheduling.
/// The first exception thrown by any task (lowest task index) is rethrown.
template <typename Fn>
void parallel_for(std::size_t tasks, unsigned threads, Fn&& fn) {
  if (tasks == 0) return;
  unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(tasks)));
  if (workers == 1) {
    for (std::size_t i = 0; i < tasks; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_index = tasks;

  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < tasks; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < first_error_index) {
          first_error_index = i;
          first_error = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace excess_kit

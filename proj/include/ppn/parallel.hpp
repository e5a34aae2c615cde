#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace ppn {

/// Selects between the OpenMP kernels and their serial reference path.
/// Both produce bit-identical results because every task draws from its
/// own labeled stream.
enum class Execution { serial, parallel };

/// Calls fn(i) for i in [0, n). Exceptions thrown by any task are captured
/// and the first one is rethrown after the loop.
template <typename Fn>
void for_each_index(std::size_t n, Execution exec, Fn&& fn) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// Number of worker threads the parallel path will use.
int worker_threads();

}  // namespace ppn

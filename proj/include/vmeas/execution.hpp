#pragma once

#include <cstddef>
#include <exception>

namespace vmeas {

/// Serial runs are the reference path; parallel runs must agree with them exactly.
enum class Execution { Serial, Parallel };

/// Calls f(i) for i in [0, n). Exceptions raised by any iteration are
/// rethrown on the calling thread (the first one to be caught wins).
template <class F>
void for_each_index(std::size_t n, Execution execution, F&& f) {
  if (execution == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(vmeas_for_each_index)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace vmeas

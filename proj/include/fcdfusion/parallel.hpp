#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace fcdf {

unsigned resolve_threads(unsigned requested);

// Calls fn(row_begin, row_end) over disjoint contiguous row bands and joins.
// With threads <= 1 everything runs on the calling thread.
template <class Fn> void for_row_bands(int rows, unsigned threads, Fn &&fn) {
  const unsigned n = std::min<unsigned>(std::max(1u, threads),
                                        static_cast<unsigned>(rows));
  if (n <= 1) {
    fn(0, rows);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> workers;
    workers.reserve(n);
    for (unsigned t = 0; t < n; ++t) {
      const int begin = static_cast<int>(static_cast<long long>(rows) * t / n);
      const int end = static_cast<int>(static_cast<long long>(rows) * (t + 1) / n);
      workers.emplace_back([&, t, begin, end] {
        try {
          fn(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
}

} // namespace fcdf

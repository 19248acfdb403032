#pragma once

// Internal: strided parallel loop over [0, n). Each index is visited once;
// the first exception thrown by any worker is rethrown after all join.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "probinfo/threads.hpp"

namespace probinfo::detail {

template <class F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(n, thread_limit()));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t k = w; k < n; k += workers) body(k);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace probinfo::detail

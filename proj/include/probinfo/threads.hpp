#pragma once

#include <cstddef>

namespace probinfo {

/// Upper bound on worker threads for sampling loops; 0 restores the default
/// (hardware concurrency, at most 8). Results do not depend on it.
void set_thread_limit(std::size_t n);
std::size_t thread_limit();

}  // namespace probinfo

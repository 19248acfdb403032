#include "probinfo/threads.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace probinfo {

namespace {
std::atomic<std::size_t> g_limit{0};
}  // namespace

void set_thread_limit(std::size_t n) { g_limit = n; }

std::size_t thread_limit() {
  const std::size_t n = g_limit;
  if (n > 0) return n;
  return std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
}

}  // namespace probinfo

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace probinfo {

/// Seed of task k under a root seed (splitmix64), so tasks can run in any
/// order or in parallel and still draw the same numbers.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t k) {
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform on [0, 1) from the top 53 bits.
inline double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Two independent standard normals (Box-Muller).
inline std::pair<double, double> normal_pair(std::mt19937_64& rng) {
  const double u = 1.0 - unit_draw(rng), v = unit_draw(rng);
  const double r = std::sqrt(-2.0 * std::log(u));
  return {r * std::cos(2.0 * M_PI * v), r * std::sin(2.0 * M_PI * v)};
}

}  // namespace probinfo

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "extremal/geometry.hpp"

namespace extremal {

/// xoshiro256** seeded through splitmix64. The whole state is derived from a
/// single 64-bit seed, so a seed value fully determines every stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  /// Independent stream for sub-task `index` (e.g. one optimizer start).
  static Rng stream(std::uint64_t seed, std::uint64_t index);

 private:
  std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Random convex polygon with exactly n vertices (Valtr's construction),
/// centered near the origin with diameter roughly 1.
std::vector<Point> random_convex_vertices(std::size_t n, Rng& rng);
ConvexPolygon random_convex_polygon(std::size_t n, Rng& rng);

}  // namespace extremal

#include "extremal/random.hpp"

#include <algorithm>
#include <cmath>

#include "extremal/errors.hpp"

namespace extremal {

namespace {

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
  for (auto& word : s_) word = splitmix64(seed);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t mix = seed;
  std::uint64_t a = splitmix64(mix);
  mix = index ^ 0xd1b54a32d192ed03ULL;
  std::uint64_t b = splitmix64(mix);
  return Rng(a ^ rotl(b, 17));
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % bound;
}

namespace {

// Splits sorted coordinates into two monotone chains and returns the
// consecutive differences; the differences sum to zero.
std::vector<double> chain_steps(std::vector<double> coords, Rng& rng) {
  std::sort(coords.begin(), coords.end());
  const double lo = coords.front();
  const double hi = coords.back();
  std::vector<double> steps;
  double last_a = lo;
  double last_b = lo;
  for (std::size_t i = 1; i + 1 < coords.size(); ++i) {
    if (rng.uniform() < 0.5) {
      steps.push_back(coords[i] - last_a);
      last_a = coords[i];
    } else {
      steps.push_back(last_b - coords[i]);
      last_b = coords[i];
    }
  }
  steps.push_back(hi - last_a);
  steps.push_back(last_b - hi);
  return steps;
}

}  // namespace

std::vector<Point> random_convex_vertices(std::size_t n, Rng& rng) {
  if (n < 3) throw InvalidArgument("random polygon needs n >= 3");
  for (;;) {
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    for (auto& x : xs) x = rng.uniform();
    for (auto& y : ys) y = rng.uniform();
    std::vector<double> dx = chain_steps(xs, rng);
    std::vector<double> dy = chain_steps(ys, rng);
    for (std::size_t i = dy.size(); i > 1; --i) std::swap(dy[i - 1], dy[rng.below(i)]);

    std::vector<Point> steps(n);
    for (std::size_t i = 0; i < n; ++i) steps[i] = {dx[i], dy[i]};
    std::sort(steps.begin(), steps.end(),
              [](Point a, Point b) { return std::atan2(a.y, a.x) < std::atan2(b.y, b.x); });

    std::vector<Point> pts(n);
    Point cur;
    for (std::size_t i = 0; i < n; ++i) {
      pts[i] = cur;
      cur = cur + steps[i];
    }
    Point c = vertex_centroid(pts);
    double r = 0.0;
    for (auto& p : pts) {
      p = p - c;
      r = std::max(r, norm(p));
    }
    for (auto& p : pts) p = (0.5 / r) * p;

    // Reject the rare draw with (nearly) parallel consecutive steps.
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      Point a = pts[(i + 1) % n] - pts[i];
      Point b = pts[(i + 2) % n] - pts[(i + 1) % n];
      ok = norm(a) > 1e-6 && cross(a, b) > 1e-9 * norm(a) * norm(b);
    }
    if (ok) return pts;
  }
}

ConvexPolygon random_convex_polygon(std::size_t n, Rng& rng) {
  return ConvexPolygon(random_convex_vertices(n, rng));
}

}  // namespace extremal

#include "extremal/reinhardt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "extremal/cyclotomic.hpp"
#include "extremal/errors.hpp"
#include "extremal/tolerances.hpp"

namespace extremal::reinhardt {

namespace {

using std::numbers::pi;
constexpr double kTwoPi = 2.0 * pi;

// Heading of star edge k in units of pi/n, reduced to [0, 2n).
std::vector<int> heading_units(const Composition& c) {
  const int n = c.n();
  std::vector<int> out(c.m());
  long long s = 0;
  for (std::size_t k = 0; k < c.m(); ++k) {
    s += c.parts()[k];
    long long e = static_cast<long long>(k + 1) * n - s;
    out[k] = static_cast<int>(((e % (2 * n)) + 2 * n) % (2 * n));
  }
  return out;
}

double ccw_sweep(double from, double to) {
  double s = std::fmod(to - from, kTwoPi);
  if (s <= 0.0) s += kTwoPi;
  return s;
}

}  // namespace

Composition::Composition(int n, std::vector<int> parts) : n_(n), parts_(std::move(parts)) {
  if (n_ < 3) throw InvalidSignature("signature needs n >= 3");
  if (parts_.size() < 3 || parts_.size() % 2 == 0) {
    throw InvalidSignature("signature needs an odd number (>= 3) of parts, got " + std::to_string(parts_.size()));
  }
  long long sum = 0;
  for (int c : parts_) {
    if (c < 1) throw InvalidSignature("signature parts must be positive");
    sum += c;
  }
  if (sum != n_) {
    throw InvalidSignature("signature parts sum to " + std::to_string(sum) + ", expected n = " + std::to_string(n_));
  }
}

std::string to_string(const Composition& c, char sep) {
  std::string s;
  for (std::size_t i = 0; i < c.m(); ++i) {
    if (i) s += sep;
    s += std::to_string(c.parts()[i]);
  }
  return s;
}

double closure_defect(const Composition& c) {
  double x = 0.0;
  double y = 0.0;
  for (int e : heading_units(c)) {
    double theta = pi * e / c.n();
    x += std::cos(theta);
    y += std::sin(theta);
  }
  return std::hypot(x, y);
}

bool is_valid(const Composition& c, ValidityMode mode) {
  if (mode.kind == ValidityMode::Kind::Numeric) return closure_defect(c) < mode.tol;
  const int n = c.n();
  cyclotomic::Poly poly(static_cast<std::size_t>(2 * n), 0);
  long long s = 0;
  for (std::size_t k = 0; k < c.m(); ++k) {
    s += c.parts()[k];
    long long e = (s + static_cast<long long>(n) * static_cast<long long>(k)) % (2 * n);
    ++poly[static_cast<std::size_t>(e)];
  }
  return cyclotomic::vanishes_at_primitive_root(poly, 2 * n);
}

double support(const ReuleauxPolygon& r, Point u) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : r.vertices) best = std::max(best, dot(v, u));
  const double phi = std::atan2(u.y, u.x);
  for (const auto& arc : r.arcs) {
    double offset = std::fmod(phi - arc.start_angle, kTwoPi);
    if (offset < 0.0) offset += kTwoPi;
    if (offset <= arc.end_angle - arc.start_angle) {
      best = std::max(best, dot(r.vertices[arc.center], u) + r.width);
    }
  }
  return best;
}

namespace {

std::vector<Arc> attach_arcs(const std::vector<Point>& boundary, double d) {
  const std::size_t m = boundary.size();
  const std::size_t offset = (m + 1) / 2;
  std::vector<Arc> arcs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t center = (i + offset) % m;
    const Point a = boundary[i] - boundary[center];
    const Point b = boundary[(i + 1) % m] - boundary[center];
    if (std::abs(norm(a) - d) > tol::kMetric * d || std::abs(norm(b) - d) > tol::kMetric * d) {
      throw ConstructionDegenerate("Reuleaux vertex " + std::to_string(center) +
                                   " is not at distance d from the opposite side");
    }
    double start = std::atan2(a.y, a.x);
    arcs[i] = {center, start, start + ccw_sweep(start, std::atan2(b.y, b.x))};
  }
  return arcs;
}

}  // namespace

ReuleauxPolygon build_reuleaux(const Composition& c, double d) {
  if (!(d > 0.0)) throw InvalidArgument("width d must be positive");
  const double defect = closure_defect(c);
  if (!(defect < tol::kClosure)) {
    throw InvalidSignature("signature (" + to_string(c) + ") does not close: defect " + std::to_string(defect));
  }
  const std::size_t m = c.m();
  std::vector<Point> star(m);
  const auto headings = heading_units(c);
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double theta = pi * headings[k] / c.n();
    star[k + 1] = star[k] + d * Point{std::cos(theta), std::sin(theta)};
  }
  const Point centroid = vertex_centroid(star);
  for (auto& v : star) v = v - centroid;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (distance(star[i], star[j]) < tol::kMetric * d) {
        throw ConstructionDegenerate("star vertices " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
  std::vector<Point> boundary = star;
  std::sort(boundary.begin(), boundary.end(),
            [](Point a, Point b) { return std::atan2(a.y, a.x) < std::atan2(b.y, b.x); });
  ReuleauxPolygon r{d, boundary, {}};
  r.arcs = attach_arcs(r.vertices, d);
  return r;
}

ReinhardtPolygon clip(const ReuleauxPolygon& r, const Composition& c) {
  const int n = c.n();
  const double step = pi / n;
  if (r.vertices.size() != c.m()) throw InvalidSignature("Reuleaux polygon and signature disagree on m");
  std::vector<int> counts;
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < r.arcs.size(); ++i) {
    const Arc& arc = r.arcs[i];
    const double ratio = (arc.end_angle - arc.start_angle) / step;
    const int count = static_cast<int>(std::lround(ratio));
    if (count < 1 || std::abs(ratio - count) > 1e-6) {
      throw ConstructionDegenerate("arc " + std::to_string(i) + " is not a multiple of pi/n");
    }
    counts.push_back(count);
    const Point center = r.vertices[arc.center];
    pts.push_back(r.vertices[i]);
    for (int k = 1; k < count; ++k) {
      const double phi = arc.start_angle + k * step;
      pts.push_back(center + r.width * Point{std::cos(phi), std::sin(phi)});
    }
  }
  std::vector<int> expected = c.parts();
  std::sort(counts.begin(), counts.end());
  std::sort(expected.begin(), expected.end());
  if (counts != expected) throw InvalidSignature("arc angles do not match signature (" + to_string(c) + ")");
  try {
    return {ConvexPolygon(std::move(pts)), c, r.width};
  } catch (const InvalidPolygon& e) {
    throw ConstructionDegenerate(std::string("clipped polygon is not convex: ") + e.what());
  }
}

ReinhardtPolygon construct(const Composition& c, double d) { return clip(build_reuleaux(c, d), c); }

ReuleauxPolygon reuleaux_from_clipped(const ConvexPolygon& p, double d) {
  std::vector<Point> boundary;
  for (std::size_t i = 0; i < p.size(); ++i) {
    int far = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (std::abs(distance(p[i], p[j]) - d) <= 1e-7 * d) ++far;
    }
    if (far >= 2) boundary.push_back(p[i]);
  }
  if (boundary.size() < 3 || boundary.size() % 2 == 0) {
    throw ConstructionDegenerate("polygon is not inscribed in a Reuleaux polygon of width d");
  }
  ReuleauxPolygon r{d, boundary, {}};
  r.arcs = attach_arcs(r.vertices, d);
  return r;
}

Composition regular_signature(int n) {
  if (n < 3) throw InvalidSignature("signature needs n >= 3");
  for (int p = 3; p <= n; p += 2) {
    if (n % p == 0) return Composition(n, std::vector<int>(static_cast<std::size_t>(p), n / p));
  }
  throw InvalidSignature("no valid signature for n = " + std::to_string(n) +
                         ": n is a power of two, so no clipped Reuleaux polygon exists");
}

namespace {

// Start index of the least rotation (two-pointer minimum expression).
std::size_t least_rotation(std::span<const int> s) {
  const std::size_t m = s.size();
  std::size_t i = 0;
  std::size_t j = 1;
  std::size_t k = 0;
  while (i < m && j < m && k < m) {
    const int a = s[(i + k) % m];
    const int b = s[(j + k) % m];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

std::vector<int> rotation(std::span<const int> s, std::size_t start) {
  std::vector<int> out(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) out[k] = s[(start + k) % s.size()];
  return out;
}

}  // namespace

std::vector<int> canonical_form(std::span<const int> parts) {
  std::vector<int> fwd = rotation(parts, least_rotation(parts));
  std::vector<int> rev(parts.rbegin(), parts.rend());
  std::vector<int> bwd = rotation(rev, least_rotation(rev));
  return std::min(fwd, bwd);
}

Composition canonical(const Composition& c) { return Composition(c.n(), canonical_form(c.parts())); }

std::size_t smallest_period(std::span<const int> parts) {
  const std::size_t m = parts.size();
  for (std::size_t p = 1; p < m; ++p) {
    if (m % p != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) ok = parts[i] == parts[(i + p) % m];
    if (ok) return p;
  }
  return m;
}

SymmetryClass classify(const Composition& c) {
  if (!is_valid(c, ValidityMode::numeric())) {
    throw InvalidSignature("cannot classify non-closing signature (" + to_string(c) + ")");
  }
  SymmetryClass out;
  out.canonical = canonical_form(c.parts());
  const std::size_t period = smallest_period(out.canonical);
  if (period < c.m()) {
    out.kind = SymmetryClass::Kind::Periodic;
    out.k = static_cast<int>(c.m() / period);
  }
  return out;
}

Composition composition_from_signs(std::span<const int> signs) {
  if (signs.size() < 3) throw InvalidSignature("sign sequence too short");
  if (signs.front() != signs.back()) throw InvalidSignature("sign sequence must start and end with the same sign");
  std::vector<int> runs;
  int run = 0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (i > 0 && signs[i] != signs[i - 1]) {
      runs.push_back(run);
      run = 0;
    }
    ++run;
  }
  runs.push_back(run);
  return Composition(static_cast<int>(signs.size()), std::move(runs));
}

std::vector<int> signs_from_composition(const Composition& c) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(c.n()));
  int sign = 1;
  for (int part : c.parts()) {
    out.insert(out.end(), static_cast<std::size_t>(part), sign);
    sign = -sign;
  }
  return out;
}

Census census(const std::vector<EnumeratedClass>& classes) {
  Census c;
  for (const auto& e : classes) {
    if (e.symmetry.kind == SymmetryClass::Kind::Periodic) {
      ++c.periodic;
    } else {
      ++c.sporadic;
    }
  }
  return c;
}

}  // namespace extremal::reinhardt

#include "extremal/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "extremal/errors.hpp"
#include "extremal/tolerances.hpp"

namespace extremal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t next(std::size_t i, std::size_t n) { return i + 1 == n ? 0 : i + 1; }

double edge_angle(Point e) {
  double a = std::atan2(e.y, e.x);
  return a < 0.0 ? a + kTwoPi : a;
}

// Index of the lowest vertex, leftmost among ties.
std::size_t bottom_left(std::span<const Point> pts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].y < pts[best].y || (pts[i].y == pts[best].y && pts[i].x < pts[best].x)) best = i;
  }
  return best;
}

std::vector<Point> drop_collinear(std::vector<Point> pts, double rel_tol) {
  bool changed = true;
  while (changed && pts.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < pts.size() && pts.size() > 3; ++i) {
      const std::size_t n = pts.size();
      Point a = pts[i] - pts[(i + n - 1) % n];
      Point b = pts[(i + 1) % n] - pts[i];
      double la = norm(a);
      double lb = norm(b);
      bool tiny = la <= tol::kCoincident || lb <= tol::kCoincident;
      bool straight = std::abs(cross(a, b)) <= rel_tol * la * lb && dot(a, b) > 0.0;
      if (tiny || straight) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        --i;
      }
    }
  }
  return pts;
}

}  // namespace

double signed_area(std::span<const Point> pts) {
  double s = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(pts[i], pts[next(i, n)]);
  return 0.5 * s;
}

ConvexityCheck check_convexity(std::span<const Point> pts) {
  const std::size_t n = pts.size();
  if (n < 3) return {false, std::nullopt};
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Point a = pts[i] - pts[(i + n - 1) % n];
    Point b = pts[next(i, n)] - pts[i];
    double c = cross(a, b);
    if (c < -tol::kCross) return {false, i};
    turning += std::atan2(c, dot(a, b));
    if (turning > kTwoPi + tol::kMetric) return {false, i};
  }
  if (std::abs(turning - kTwoPi) > tol::kMetric) return {false, n - 1};
  return {true, std::nullopt};
}

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw InvalidPolygon("polygon needs at least 3 vertices", 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(vertices_[i].x) || !std::isfinite(vertices_[i].y)) {
      throw InvalidPolygon("non-finite coordinate at vertex " + std::to_string(i), i);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(vertices_[i], vertices_[next(i, n)]) <= tol::kCoincident) {
      throw InvalidPolygon("coincident consecutive vertices at " + std::to_string(i), i);
    }
  }
  double area = signed_area(vertices_);
  if (area == 0.0) throw InvalidPolygon("polygon has zero area", 0);
  if (area < 0.0) std::reverse(vertices_.begin(), vertices_.end());
  auto check = check_convexity(vertices_);
  if (!check.convex) {
    std::size_t at = check.violation.value_or(0);
    throw InvalidPolygon("polygon is not convex at vertex " + std::to_string(at), at);
  }
  auto start = std::min_element(vertices_.begin(), vertices_.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  std::rotate(vertices_.begin(), start, vertices_.end());
  // Normalize -0.0 so serialized output is canonical.
  for (auto& v : vertices_) {
    v.x += 0.0;
    v.y += 0.0;
  }
}

double perimeter(const ConvexPolygon& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += norm(p.edge(i));
  return s;
}

std::vector<double> side_lengths(const ConvexPolygon& p) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = norm(p.edge(i));
  return out;
}

namespace {

struct Calipers {
  double width;
  double diameter;
};

// For each edge i the farthest vertex from the edge line is tracked by a
// pointer that only moves forward, giving both extrema in O(n).
Calipers rotating_calipers(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  auto height = [&](std::size_t i, std::size_t j) { return cross(p.edge(i), v[j] - v[i]); };

  std::size_t j = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (height(0, k) > height(0, j)) j = k;
  }

  double w = std::numeric_limits<double>::infinity();
  double d2 = 0.0;
  auto consider = [&](std::size_t a, std::size_t b) {
    Point diff = v[a] - v[b];
    d2 = std::max(d2, dot(diff, diff));
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t steps = 0; steps < n && height(i, next(j, n)) > height(i, j); ++steps) {
      j = next(j, n);
    }
    double len = norm(p.edge(i));
    w = std::min(w, height(i, j) / len);
    const std::size_t i1 = next(i, n);
    const std::size_t jp = (j + n - 1) % n;
    const std::size_t jn = next(j, n);
    for (std::size_t b : {jp, j, jn}) {
      consider(i, b);
      consider(i1, b);
    }
  }
  return {w, std::sqrt(d2)};
}

}  // namespace

double diameter(const ConvexPolygon& p) { return rotating_calipers(p).diameter; }
double width(const ConvexPolygon& p) { return rotating_calipers(p).width; }

Metrics metrics(const ConvexPolygon& p) {
  Calipers c = rotating_calipers(p);
  return {signed_area(p.vertices()), perimeter(p), c.width, c.diameter};
}

double directional_width(const ConvexPolygon& p, Point u) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : p.vertices()) {
    double s = dot(v, u);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return hi - lo;
}

bool is_strictly_convex(const ConvexPolygon& p, double tol) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(p.edge((i + n - 1) % n), p.edge(i)) <= tol) return false;
  }
  return true;
}

ConvexPolygon central_symmetrize(const ConvexPolygon& p) {
  const std::size_t n = p.size();
  std::vector<Point> a(n);
  std::vector<Point> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = 0.5 * p[i];
    b[i] = -0.5 * p[i];
  }
  std::rotate(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(bottom_left(a)), a.end());
  std::rotate(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(bottom_left(b)), b.end());

  // Edge directions starting from the bottom-left vertex increase
  // monotonically in [0, 2pi).
  std::vector<Point> merged;
  merged.reserve(2 * n);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < n) {
    Point ea = a[next(i % n, n)] - a[i % n];
    Point eb = b[next(j % n, n)] - b[j % n];
    if (j == n || (i < n && edge_angle(ea) < edge_angle(eb))) {
      merged.push_back(ea);
      ++i;
    } else if (i == n || edge_angle(eb) < edge_angle(ea)) {
      merged.push_back(eb);
      ++j;
    } else {
      merged.push_back(ea + eb);
      ++i;
      ++j;
    }
  }

  std::vector<Point> pts;
  pts.reserve(merged.size());
  Point cur = a[0] + b[0];
  for (std::size_t k = 0; k < merged.size(); ++k) {
    pts.push_back(cur);
    cur = cur + merged[k];
  }
  return ConvexPolygon(drop_collinear(std::move(pts), 1e-12));
}

std::vector<std::size_t> DiameterGraph::degrees() const {
  std::vector<std::size_t> deg(n, 0);
  for (auto [i, j] : edges) {
    ++deg[i];
    ++deg[j];
  }
  return deg;
}

DiameterGraph diameter_graph(const ConvexPolygon& p, double tol) {
  if (!(tol >= 0.0 && tol <= 1e-3)) throw InvalidArgument("diameter graph tolerance must lie in [0, 1e-3]");
  const double d = diameter(p);
  DiameterGraph g{p.size(), {}, tol};
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (distance(p[i], p[j]) >= (1.0 - tol) * d) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

bool is_centrally_symmetric(const ConvexPolygon& p, double tol) {
  double scale = 1.0;
  for (const auto& v : p.vertices()) scale = std::max(scale, norm(v));
  for (const auto& v : p.vertices()) {
    bool matched = std::any_of(p.vertices().begin(), p.vertices().end(),
                               [&](Point w) { return norm(v + w) <= tol * scale; });
    if (!matched) return false;
  }
  return true;
}

Radii symmetric_radii(const ConvexPolygon& p) {
  if (!is_centrally_symmetric(p, tol::kMetric)) {
    throw InvalidArgument("symmetric_radii requires a polygon centrally symmetric about the origin");
  }
  Radii r{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t i = 0; i < p.size(); ++i) {
    r.circumradius = std::max(r.circumradius, norm(p[i]));
    Point e = p.edge(i);
    r.inradius = std::min(r.inradius, std::abs(cross(e, p[i])) / norm(e));
  }
  return r;
}

ConvexPolygon scaled(const ConvexPolygon& p, double factor) {
  if (!(factor > 0.0)) throw InvalidArgument("scale factor must be positive");
  std::vector<Point> v = p.vertices();
  for (auto& q : v) q = factor * q;
  return ConvexPolygon(std::move(v));
}

ConvexPolygon translated(const ConvexPolygon& p, Point offset) {
  std::vector<Point> v = p.vertices();
  for (auto& q : v) q = q + offset;
  return ConvexPolygon(std::move(v));
}

ConvexPolygon rotated(const ConvexPolygon& p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  std::vector<Point> v = p.vertices();
  for (auto& q : v) q = {c * q.x - s * q.y, s * q.x + c * q.y};
  return ConvexPolygon(std::move(v));
}

Point vertex_centroid(std::span<const Point> pts) {
  Point c;
  for (const auto& q : pts) c = c + q;
  return (1.0 / static_cast<double>(pts.size())) * c;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i - 1] - h[k - 2]) <= 0.0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

std::vector<Point> subdivide_to(std::vector<Point> hull, std::size_t n) {
  while (hull.size() < n) {
    std::size_t best = 0;
    double best_len = -1.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      double len = distance(hull[i], hull[next(i, hull.size())]);
      if (len > best_len) {
        best_len = len;
        best = i;
      }
    }
    Point mid = 0.5 * (hull[best] + hull[next(best, hull.size())]);
    hull.insert(hull.begin() + static_cast<std::ptrdiff_t>(best) + 1, mid);
  }
  return hull;
}

}  // namespace extremal

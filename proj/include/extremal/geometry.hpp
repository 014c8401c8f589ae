#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace extremal {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator-(Point a) { return {-a.x, -a.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// Signed shoelace area; positive for counterclockwise order.
double signed_area(std::span<const Point> pts);

struct ConvexityCheck {
  bool convex = false;
  /// First vertex whose turn is clockwise, or where the accumulated turning
  /// first exceeds a full turn.
  std::optional<std::size_t> violation;
};

/// Weak convexity of a counterclockwise vertex sequence: every consecutive
/// cross product >= -1e-12 and total turning equal to 2*pi. Collinear
/// triples are admitted.
ConvexityCheck check_convexity(std::span<const Point> pts);
inline bool is_convex(std::span<const Point> pts) { return check_convexity(pts).convex; }

/// A weakly convex polygon with at least three vertices.
///
/// Construction validates the vertex list and normalizes it: clockwise input
/// is reversed, and the sequence is rotated to start at the lexicographically
/// smallest vertex (by x, then y). Two polygons built from the same vertex
/// set therefore compare equal.
class ConvexPolygon {
 public:
  /// Throws InvalidPolygon on fewer than three vertices, non-finite
  /// coordinates, coincident consecutive vertices, zero area, or a
  /// convexity violation.
  explicit ConvexPolygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }
  Point edge(std::size_t i) const { return vertices_[(i + 1) % size()] - vertices_[i]; }

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

 private:
  std::vector<Point> vertices_;
};

struct Metrics {
  double area = 0.0;
  double perimeter = 0.0;
  double width = 0.0;
  double diameter = 0.0;
};

/// Shoelace area, edge-sum perimeter, and rotating-calipers width and
/// diameter.
Metrics metrics(const ConvexPolygon& p);

double perimeter(const ConvexPolygon& p);
double diameter(const ConvexPolygon& p);
double width(const ConvexPolygon& p);
std::vector<double> side_lengths(const ConvexPolygon& p);

/// Extent of the polygon along a unit direction u: max <v,u> - min <v,u>.
double directional_width(const ConvexPolygon& p, Point u);

bool is_strictly_convex(const ConvexPolygon& p, double tol = 1e-12);

/// Difference body (P - P) / 2 as the Minkowski sum of P/2 and -P/2,
/// merging the two edge sequences by direction. Parallel edges are fused,
/// so the result has at most 2n sides.
ConvexPolygon central_symmetrize(const ConvexPolygon& p);

struct DiameterGraph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted
  double tolerance = 0.0;

  std::vector<std::size_t> degrees() const;
};

/// All vertex pairs at distance >= (1 - tol) * diameter. tol in [0, 1e-3].
DiameterGraph diameter_graph(const ConvexPolygon& p, double tol);

struct Radii {
  double inradius = 0.0;
  double circumradius = 0.0;
};

/// In- and circumradius about the origin of a polygon centrally symmetric
/// about the origin. Throws InvalidArgument for non-symmetric input.
Radii symmetric_radii(const ConvexPolygon& p);

bool is_centrally_symmetric(const ConvexPolygon& p, double tol = 1e-9);

ConvexPolygon scaled(const ConvexPolygon& p, double factor);
ConvexPolygon translated(const ConvexPolygon& p, Point offset);
ConvexPolygon rotated(const ConvexPolygon& p, double angle);

Point vertex_centroid(std::span<const Point> pts);

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
std::vector<Point> convex_hull(std::vector<Point> pts);

/// Splits the longest edges at their midpoints until the vertex count
/// reaches n. Metrics are unchanged; the result is weakly convex.
std::vector<Point> subdivide_to(std::vector<Point> hull, std::size_t n);

}  // namespace extremal

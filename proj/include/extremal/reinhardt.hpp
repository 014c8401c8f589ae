#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "extremal/geometry.hpp"

namespace extremal::reinhardt {

/// Signature (c_1, ..., c_m) of a Reinhardt polygon: an odd number m >= 3 of
/// positive parts summing to n. Arc i of the underlying Reuleaux polygon
/// subtends c_i * pi / n.
class Composition {
 public:
  /// Throws InvalidSignature if the invariants fail.
  Composition(int n, std::vector<int> parts);

  int n() const noexcept { return n_; }
  std::size_t m() const noexcept { return parts_.size(); }
  const std::vector<int>& parts() const noexcept { return parts_; }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition& a, const Composition& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    return a.parts_ <=> b.parts_;
  }

 private:
  int n_;
  std::vector<int> parts_;
};

std::string to_string(const Composition& c, char sep = ',');

struct ValidityMode {
  enum class Kind { Numeric, Exact };
  Kind kind = Kind::Exact;
  double tol = 1e-9;

  static ValidityMode numeric(double tol = 1e-9) { return {Kind::Numeric, tol}; }
  static ValidityMode exact() { return {Kind::Exact, 0.0}; }
};

/// |sum_k (cos theta_k, sin theta_k)| for the unit star polygon with headings
/// theta_k = sum_{j<=k} (pi - c_j pi / n). Zero iff the star closes.
double closure_defect(const Composition& c);

/// Numeric: closure_defect < tol. Exact: Phi_{2n} divides
/// sum_k x^((s_k + n k) mod 2n), with s_k the partial sums of the parts.
bool is_valid(const Composition& c, ValidityMode mode = ValidityMode::exact());

struct Arc {
  std::size_t center = 0;   // index into ReuleauxPolygon::vertices
  double start_angle = 0.0; // counterclockwise sweep from start to end
  double end_angle = 0.0;
};

/// Constant-width body bounded by radius-d arcs. Vertices are in
/// counterclockwise boundary order; arc i runs from vertex i to vertex i+1.
struct ReuleauxPolygon {
  double width = 0.0;
  std::vector<Point> vertices;
  std::vector<Arc> arcs;
};

/// Support function of the Reuleaux body in unit direction u.
double support(const ReuleauxPolygon& r, Point u);

/// Walks the star polygon of length-d diagonals, centers it at the vertex
/// centroid, and attaches to each boundary side the arc about the opposite
/// vertex. Throws InvalidSignature when the star does not close and
/// ConstructionDegenerate when two vertices coincide.
ReuleauxPolygon build_reuleaux(const Composition& c, double d);

struct ReinhardtPolygon {
  ConvexPolygon polygon;
  Composition signature;
  double width;
};

/// Splits arc i into c_i sub-arcs of angle pi/n and joins the chord ends.
ReinhardtPolygon clip(const ReuleauxPolygon& r, const Composition& c);

/// build_reuleaux followed by clip.
ReinhardtPolygon construct(const Composition& c, double d = 1.0);

/// Recovers the Reuleaux polygon a clipped polygon is inscribed in: its
/// vertices are the polygon vertices of diameter-graph degree >= 2.
ReuleauxPolygon reuleaux_from_clipped(const ConvexPolygon& p, double d);

/// (n/p, ..., n/p) repeated p times, p the smallest odd prime factor of n.
/// Throws InvalidSignature for powers of two.
Composition regular_signature(int n);

/// Lexicographically least word among all rotations and reversed rotations.
std::vector<int> canonical_form(std::span<const int> parts);
Composition canonical(const Composition& c);

/// Smallest p dividing m such that rotating the word by p fixes it.
std::size_t smallest_period(std::span<const int> parts);

struct SymmetryClass {
  enum class Kind { Periodic, Sporadic };
  Kind kind = Kind::Sporadic;
  int k = 1;  // rotational symmetry order; 1 for sporadic
  std::vector<int> canonical;

  friend bool operator==(const SymmetryClass&, const SymmetryClass&) = default;
};

/// Periodic(k) with k = m / smallest period when that period is proper,
/// Sporadic otherwise. Throws InvalidSignature for non-closing signatures.
SymmetryClass classify(const Composition& c);

/// Run-length decoding of a +-1 sequence with equal first and last signs.
Composition composition_from_signs(std::span<const int> signs);
std::vector<int> signs_from_composition(const Composition& c);

struct EnumeratedClass {
  Composition signature;  // canonical form
  SymmetryClass symmetry;
};

struct EnumerationLimits {
  int max_n = 100;
  /// Upper bound on raw sign sequences examined; guards the exponential
  /// blow-up for n with many small odd factors.
  std::uint64_t max_candidates = std::uint64_t{1} << 22;
};

/// All valid signatures of n up to rotation and reflection, classified and
/// sorted lexicographically. Exact mode combines independent vanishing
/// sub-sums over the 2-power residue classes; numeric mode runs a
/// meet-in-the-middle search over the +-1 encoding (n <= 44). Throws
/// CapExceeded when n or the candidate count exceed the limits.
std::vector<EnumeratedClass> enumerate(int n, ValidityMode mode = ValidityMode::exact(),
                                       EnumerationLimits limits = {});

struct Census {
  std::size_t periodic = 0;
  std::size_t sporadic = 0;
};
Census census(const std::vector<EnumeratedClass>& classes);

/// Subsets A of Z_q (bit s set) with sum_{s in A} exp(2 pi i s / q) = 0, as
/// disjoint unions of cosets of prime-order subgroups. Valid for odd q with
/// at most two distinct prime factors. Exposed for testing.
std::vector<std::vector<bool>> vanishing_subsets(int q, std::uint64_t max_count);

}  // namespace extremal::reinhardt

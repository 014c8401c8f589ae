#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "extremal/geometry.hpp"

namespace extremal::bounds {

enum class InequalityId {
  ZenodorusIsoperimetric,
  ReinhardtPerimeterDiameter,
  ReinhardtAreaDiameter,
  GashkovPerimeterWidth,
  GashkovWidthDiameter,
  PalAreaWidth,
  EquilateralAreaDiameter,
};

inline constexpr std::array<InequalityId, 7> kAllInequalities = {
    InequalityId::ZenodorusIsoperimetric, InequalityId::ReinhardtPerimeterDiameter,
    InequalityId::ReinhardtAreaDiameter,  InequalityId::GashkovPerimeterWidth,
    InequalityId::GashkovWidthDiameter,   InequalityId::PalAreaWidth,
    InequalityId::EquilateralAreaDiameter,
};

std::string_view name(InequalityId id);
InequalityId inequality_from_name(std::string_view name);

/// Which metric the bound is expressed in (the "given" quantity).
enum class Given { Perimeter, Diameter, Width };
Given given_quantity(InequalityId id);

/// True when the bound is an upper bound on the observed quantity.
bool is_upper_bound(InequalityId id);

/// Whether some n-gon attains the bound, from the factorization of n.
bool attainable(InequalityId id, int n);

bool is_power_of_two(int n);
bool has_odd_factor(int n);

/// p^2 / (4 n tan(pi/n)).
double max_area_given_perimeter(int n, double p);
/// 2 n sin(pi/2n) d; attained iff n is not a power of two.
double max_perimeter_given_diameter(int n, double d);
/// (n/2) cos(pi/n) tan(pi/2n) d^2; attained iff n is odd.
double max_area_given_diameter(int n, double d);
/// 2 n tan(pi/2n) w.
double min_perimeter_given_width(int n, double w);
/// cos(pi/2n) d; attained iff n has an odd factor.
double max_width_given_diameter(int n, double d);
/// w^2 / sqrt(3), the equilateral triangle of width w.
double min_area_given_width(double w);
/// (d^2 n / 2) cos(pi/n) tan(pi/2n), the closed form as printed. For even n
/// it exceeds the regular n-gon of diameter d; see
/// optimizer::equilateral_max_area_reference for the attained value.
double equilateral_area_diameter_formula(int n, double d);

/// Evaluates inequality `id` for an n-gon whose given quantity is `value`.
double bound_value(InequalityId id, int n, double value);

struct Entry {
  InequalityId id;
  double bound = 0.0;
  double observed = 0.0;
  /// Oriented so that a valid polygon has slack >= 0.
  double slack = 0.0;
  bool equality = false;
};

struct BoundsReport {
  std::string polygon_id;
  std::vector<Entry> entries;

  /// Every slack >= -1e-9 (relative to max(1, |bound|)).
  bool all_hold() const;
  const Entry& entry(InequalityId id) const;
};

BoundsReport verify(const ConvexPolygon& p, std::string polygon_id = {});

struct ChainCheck {
  std::size_t m = 0;
  double lhs = 0.0;     // 2m sin(pi/2m) d(P)
  double p_star = 0.0;  // perimeter of P*
  double rhs = 0.0;     // m tan(pi/m) w(P)
  bool holds = false;
};

/// Perimeter chain through the difference body P* with m = sides(P*).
ChainCheck symmetrization_chain_check(const ConvexPolygon& p);

}  // namespace extremal::bounds

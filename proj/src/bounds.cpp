#include "extremal/bounds.hpp"

#include <cmath>
#include <numbers>

#include "extremal/errors.hpp"
#include "extremal/tolerances.hpp"

namespace extremal::bounds {

namespace {

using std::numbers::pi;

void require_n(int n) {
  if (n < 3) throw InvalidArgument("n must be at least 3");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
}

double tolerance_for(double bound) { return tol::kEquality * std::max(1.0, std::abs(bound)); }

}  // namespace

std::string_view name(InequalityId id) {
  switch (id) {
    case InequalityId::ZenodorusIsoperimetric: return "ZenodorusIsoperimetric";
    case InequalityId::ReinhardtPerimeterDiameter: return "ReinhardtPerimeterDiameter";
    case InequalityId::ReinhardtAreaDiameter: return "ReinhardtAreaDiameter";
    case InequalityId::GashkovPerimeterWidth: return "GashkovPerimeterWidth";
    case InequalityId::GashkovWidthDiameter: return "GashkovWidthDiameter";
    case InequalityId::PalAreaWidth: return "PalAreaWidth";
    case InequalityId::EquilateralAreaDiameter: return "EquilateralAreaDiameter";
  }
  return "?";
}

InequalityId inequality_from_name(std::string_view s) {
  for (auto id : kAllInequalities) {
    if (name(id) == s) return id;
  }
  throw InvalidArgument("unknown inequality '" + std::string(s) + "'");
}

Given given_quantity(InequalityId id) {
  switch (id) {
    case InequalityId::ZenodorusIsoperimetric: return Given::Perimeter;
    case InequalityId::GashkovPerimeterWidth:
    case InequalityId::PalAreaWidth: return Given::Width;
    default: return Given::Diameter;
  }
}

bool is_upper_bound(InequalityId id) {
  return id != InequalityId::GashkovPerimeterWidth && id != InequalityId::PalAreaWidth;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
bool has_odd_factor(int n) { return n > 0 && !is_power_of_two(n); }

bool attainable(InequalityId id, int n) {
  require_n(n);
  switch (id) {
    case InequalityId::ZenodorusIsoperimetric: return true;
    case InequalityId::ReinhardtPerimeterDiameter:
    case InequalityId::GashkovPerimeterWidth:
    case InequalityId::GashkovWidthDiameter: return has_odd_factor(n);
    case InequalityId::ReinhardtAreaDiameter:
    case InequalityId::EquilateralAreaDiameter: return n % 2 == 1;
    case InequalityId::PalAreaWidth: return n == 3;
  }
  return false;
}

double max_area_given_perimeter(int n, double p) {
  require_n(n);
  require_positive(p, "perimeter");
  return p * p / (4.0 * n * std::tan(pi / n));
}

double max_perimeter_given_diameter(int n, double d) {
  require_n(n);
  require_positive(d, "diameter");
  return 2.0 * n * std::sin(pi / (2.0 * n)) * d;
}

double max_area_given_diameter(int n, double d) {
  require_n(n);
  require_positive(d, "diameter");
  return 0.5 * n * std::cos(pi / n) * std::tan(pi / (2.0 * n)) * d * d;
}

double min_perimeter_given_width(int n, double w) {
  require_n(n);
  require_positive(w, "width");
  return 2.0 * n * std::tan(pi / (2.0 * n)) * w;
}

double max_width_given_diameter(int n, double d) {
  require_n(n);
  require_positive(d, "diameter");
  return std::cos(pi / (2.0 * n)) * d;
}

double min_area_given_width(double w) {
  require_positive(w, "width");
  return w * w / std::sqrt(3.0);
}

double equilateral_area_diameter_formula(int n, double d) {
  require_n(n);
  require_positive(d, "diameter");
  return 0.5 * d * d * n * std::cos(pi / n) * std::tan(pi / (2.0 * n));
}

double bound_value(InequalityId id, int n, double value) {
  switch (id) {
    case InequalityId::ZenodorusIsoperimetric: return max_area_given_perimeter(n, value);
    case InequalityId::ReinhardtPerimeterDiameter: return max_perimeter_given_diameter(n, value);
    case InequalityId::ReinhardtAreaDiameter: return max_area_given_diameter(n, value);
    case InequalityId::GashkovPerimeterWidth: return min_perimeter_given_width(n, value);
    case InequalityId::GashkovWidthDiameter: return max_width_given_diameter(n, value);
    case InequalityId::PalAreaWidth:
      require_n(n);
      return min_area_given_width(value);
    case InequalityId::EquilateralAreaDiameter: return equilateral_area_diameter_formula(n, value);
  }
  throw InvalidArgument("unknown inequality");
}

bool BoundsReport::all_hold() const {
  for (const auto& e : entries) {
    if (e.slack < -tolerance_for(e.bound)) return false;
  }
  return true;
}

const Entry& BoundsReport::entry(InequalityId id) const {
  for (const auto& e : entries) {
    if (e.id == id) return e;
  }
  throw InvalidArgument("report has no entry " + std::string(name(id)));
}

BoundsReport verify(const ConvexPolygon& p, std::string polygon_id) {
  const Metrics m = metrics(p);
  const int n = static_cast<int>(p.size());
  BoundsReport report{std::move(polygon_id), {}};
  for (auto id : kAllInequalities) {
    double given = 0.0;
    switch (given_quantity(id)) {
      case Given::Perimeter: given = m.perimeter; break;
      case Given::Diameter: given = m.diameter; break;
      case Given::Width: given = m.width; break;
    }
    double observed = 0.0;
    switch (id) {
      case InequalityId::ZenodorusIsoperimetric:
      case InequalityId::ReinhardtAreaDiameter:
      case InequalityId::PalAreaWidth:
      case InequalityId::EquilateralAreaDiameter: observed = m.area; break;
      case InequalityId::ReinhardtPerimeterDiameter:
      case InequalityId::GashkovPerimeterWidth: observed = m.perimeter; break;
      case InequalityId::GashkovWidthDiameter: observed = m.width; break;
    }
    Entry e{id, bound_value(id, n, given), observed, 0.0, false};
    e.slack = is_upper_bound(id) ? e.bound - e.observed : e.observed - e.bound;
    e.equality = std::abs(e.slack) <= tolerance_for(e.bound);
    report.entries.push_back(e);
  }
  return report;
}

ChainCheck symmetrization_chain_check(const ConvexPolygon& p) {
  const ConvexPolygon star = central_symmetrize(p);
  const Metrics base = metrics(p);
  ChainCheck c;
  c.m = star.size();
  const double m = static_cast<double>(c.m);
  c.lhs = 2.0 * m * std::sin(pi / (2.0 * m)) * base.diameter;
  c.p_star = perimeter(star);
  c.rhs = m * std::tan(pi / m) * base.width;
  c.holds = c.lhs >= c.p_star - tolerance_for(c.lhs) && c.p_star >= c.rhs - tolerance_for(c.rhs);
  return c;
}

}  // namespace extremal::bounds

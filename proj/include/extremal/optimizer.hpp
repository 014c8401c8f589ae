#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "extremal/augmented_lagrangian.hpp"
#include "extremal/geometry.hpp"

namespace extremal::optimizer {

enum class Objective { MaximizeArea, MaximizePerimeter, MaximizeWidth };
enum class ConstraintKind { DiameterAtMost, WidthAtLeast, PerimeterAtMost };

std::string_view name(Objective o);
std::string_view name(ConstraintKind c);

struct OptimizationProblem {
  Objective objective = Objective::MaximizeArea;
  ConstraintKind constraint = ConstraintKind::DiameterAtMost;
  double value = 1.0;  // v
  int n = 3;
  bool equilateral = false;
};

struct SolveConfig {
  int starts = 64;
  std::uint64_t seed = 0;
  int max_iterations = 2000;  // per inner subproblem
  int outer_rounds = 14;
  int max_n = 16;
  /// 0 uses the hardware concurrency.
  unsigned threads = 1;
  /// Called once per finished start, in start order: (start index, value).
  std::function<void(int, double)> progress;
};

struct OptimizationResult {
  ConvexPolygon best;
  double value = 0.0;
  double bound = 0.0;
  double gap = 0.0;  // bound - value
  int starts = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  /// Constraint violation of `best`, relative to v.
  double violation = 0.0;
  /// Best value after each start; nondecreasing.
  std::vector<double> history;
};

/// Closed-form upper bound matching the problem (see the README table).
double problem_bound(const OptimizationProblem& problem);

/// Throws InvalidArgument for ill-posed problems: n out of range, v <= 0,
/// objective and constraint on the same quantity, and width lower bounds
/// that leave the objective unbounded (anything but equilateral odd n).
void validate(const OptimizationProblem& problem, int max_n = 16);

/// Multistart augmented-Lagrangian search. Throws Infeasible when no start
/// ends in a feasible convex polygon.
OptimizationResult solve(const OptimizationProblem& problem, const SolveConfig& config = {});

/// Maximum area at unit diameter over the (n-1)-cycle-plus-pendant diameter
/// graph family; n even, 6 <= n <= 12.
OptimizationResult graham_solve(int n, const SolveConfig& config = {});

struct RegularSpec {
  enum class Kind { Diameter, Side, Width };
  Kind kind = Kind::Diameter;
  double value = 1.0;
};

/// Regular n-gon with a horizontal bottom edge, centered at the origin.
ConvexPolygon regular_polygon(int n, RegularSpec spec);

/// Area of the regular n-gon of diameter d, the equilateral maximum.
double equilateral_max_area_reference(int n, double d);

/// Equilateral triangle (n = 3) or trapezoid with all sides 2w/sqrt(3) and
/// width w; odd n >= 3.
ConvexPolygon audet_ninin_polygon(int n, double w);

/// True when the graph is a single (n-1)-cycle plus one edge from a cycle
/// vertex to the remaining vertex.
bool is_cycle_plus_pendant(const DiameterGraph& g);

namespace detail {

/// The normalized (v = 1) subproblem that start `start` of solve() or
/// graham_solve() hands to the NLP solver, with its initial point. The
/// problem owns its model. Exposed so tests can check derivatives.
struct Probe {
  nlp::Problem problem;
  std::vector<double> x0;
};
Probe probe(const OptimizationProblem& problem, bool graham, std::uint64_t seed, std::size_t start);

}  // namespace detail

}  // namespace extremal::optimizer

#pragma once

namespace extremal::tol {

// Absolute tolerance on edge cross products for convexity predicates.
inline constexpr double kCross = 1e-12;
// Minimum distance between consecutive vertices.
inline constexpr double kCoincident = 1e-12;
// Metric comparisons (equality of lengths, areas, symmetry checks).
inline constexpr double kMetric = 1e-9;
// Equality detection in bounds reports, relative to the bound value.
inline constexpr double kEquality = 1e-9;
// Star-polygon closure in numeric signature validation.
inline constexpr double kClosure = 1e-9;
// Feasibility of optimizer output, relative to the constraint value.
inline constexpr double kFeasibility = 1e-7;

}  // namespace extremal::tol

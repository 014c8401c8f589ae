#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "extremal/bounds.hpp"
#include "extremal/geometry.hpp"

namespace extremal::io {

inline constexpr int kSchemaVersion = 1;

enum class DocumentKind { Generic, Reinhardt, Reuleaux, Optimized };

std::string_view name(DocumentKind k);

struct Provenance {
  std::string command;
  std::uint64_t seed = 0;
  std::string config_hash;
};

struct OptimizationSummary {
  std::string objective;   // area | perimeter | width
  std::string constraint;  // diameter | width | perimeter
  double constraint_value = 1.0;
  int n = 0;
  bool equilateral = false;
  bool graham = false;
  double value = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  int starts = 0;
  bool converged = false;
};

/// On-disk polygon record. `signature` and `width` are present exactly for
/// reinhardt and reuleaux documents, `optimization` exactly for optimized
/// ones. Reuleaux documents store the Reuleaux vertices; reinhardt documents
/// store the clipped polygon.
struct PolygonDocument {
  int schema_version = kSchemaVersion;
  DocumentKind kind = DocumentKind::Generic;
  std::vector<Point> vertices;
  std::optional<std::vector<int>> signature;
  std::optional<double> width;
  std::optional<OptimizationSummary> optimization;
  Provenance provenance;
  std::optional<bounds::BoundsReport> report;
};

/// Pretty-printed JSON; numbers use the shortest decimal that round-trips,
/// so save(load(save(d))) == save(d).
std::string save(const PolygonDocument& doc);

/// Throws MalformedDocument on syntax errors, missing or unexpected fields,
/// and kind/field mismatches.
PolygonDocument load(std::string_view text);

/// 64-bit FNV-1a of the canonical configuration string, as 16 hex digits.
std::string config_hash(std::string_view canonical_config);

/// Shortest round-trip decimal of a double (the form used in documents).
std::string format_number(double v);

std::string report_csv(const bounds::BoundsReport& r);
std::string report_json(const bounds::BoundsReport& r);

}  // namespace extremal::io

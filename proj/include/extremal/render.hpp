#pragma once

#include <string>

#include "extremal/document.hpp"

namespace extremal::io {

struct RenderOptions {
  int canvas = 800;  // pixels, square
  double stroke = 1.5;  // pixels
  bool show_arcs = true;
  bool show_diameter_graph = false;
  bool labels = false;
  double diameter_tol = 1e-6;
};

/// Deterministic SVG. The view box is [-1.1 d, 1.1 d]^2 with d the
/// diameter (the width field for Reuleaux-type documents); the polygon is
/// centered on its bounding box and drawn with y pointing up. Throws
/// MalformedDocument when the vertices are not a convex polygon and
/// InvalidArgument for bad options.
std::string render_svg(const PolygonDocument& doc, const RenderOptions& options = {});

}  // namespace extremal::io

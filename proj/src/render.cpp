#include "extremal/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "extremal/errors.hpp"
#include "extremal/reinhardt.hpp"

namespace extremal::io {

namespace {

// Fixed six decimals; negative zero printed as zero.
std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

struct Frame {
  Point center;
  std::string xy(Point p) const { return fixed(p.x - center.x) + " " + fixed(-(p.y - center.y)); }
};

}  // namespace

std::string render_svg(const PolygonDocument& doc, const RenderOptions& options) {
  if (options.canvas <= 0 || !(options.stroke > 0.0)) throw InvalidArgument("canvas and stroke must be positive");
  std::optional<ConvexPolygon> poly;
  try {
    poly.emplace(doc.vertices);
  } catch (const InvalidPolygon& e) {
    throw MalformedDocument(std::string("vertices do not form a convex polygon: ") + e.what());
  }
  const bool reuleaux_like = doc.kind == DocumentKind::Reinhardt || doc.kind == DocumentKind::Reuleaux;
  const double d = reuleaux_like && doc.width ? *doc.width : diameter(*poly);

  double xmin = poly->vertices()[0].x, xmax = xmin, ymin = poly->vertices()[0].y, ymax = ymin;
  for (const auto& v : poly->vertices()) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const Frame frame{{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}};
  const double half = 1.1 * d;
  const double px = 2.0 * half / options.canvas;  // view-box units per pixel

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.canvas) + "\" height=\"" +
         std::to_string(options.canvas) + "\" viewBox=\"" + fixed(-half) + " " + fixed(-half) + " " +
         fixed(2.0 * half) + " " + fixed(2.0 * half) + "\">\n";
  out += "<rect x=\"" + fixed(-half) + "\" y=\"" + fixed(-half) + "\" width=\"" + fixed(2.0 * half) + "\" height=\"" +
         fixed(2.0 * half) + "\" fill=\"white\"/>\n";

  const auto& vs = poly->vertices();
  std::string path = "M " + frame.xy(vs[0]);
  for (std::size_t i = 1; i < vs.size(); ++i) path += " L " + frame.xy(vs[i]);
  path += " Z";
  out += "<path class=\"polygon\" d=\"" + path + "\" fill=\"#dde8f4\" stroke=\"#1f3b5c\" stroke-width=\"" +
         fixed(options.stroke * px) + "\" stroke-linejoin=\"round\"/>\n";

  if (options.show_arcs && reuleaux_like) {
    reinhardt::ReuleauxPolygon r;
    try {
      r = reinhardt::reuleaux_from_clipped(*poly, d);
    } catch (const ConstructionDegenerate& e) {
      throw MalformedDocument(std::string("cannot recover Reuleaux arcs: ") + e.what());
    }
    for (const auto& arc : r.arcs) {
      const Point c = r.vertices[arc.center];
      const Point a = c + d * Point{std::cos(arc.start_angle), std::sin(arc.start_angle)};
      const Point b = c + d * Point{std::cos(arc.end_angle), std::sin(arc.end_angle)};
      out += "<path class=\"arc\" d=\"M " + frame.xy(a) + " A " + fixed(d) + " " + fixed(d) + " 0 0 0 " +
             frame.xy(b) + "\" fill=\"none\" stroke=\"#b5452b\" stroke-width=\"" + fixed(options.stroke * px) +
             "\"/>\n";
    }
  }

  if (options.show_diameter_graph) {
    const DiameterGraph g = diameter_graph(*poly, options.diameter_tol);
    for (auto [i, j] : g.edges) {
      const std::string a = frame.xy(vs[i]);
      const std::string b = frame.xy(vs[j]);
      const auto sp_a = a.find(' ');
      const auto sp_b = b.find(' ');
      out += "<line class=\"chord\" x1=\"" + a.substr(0, sp_a) + "\" y1=\"" + a.substr(sp_a + 1) + "\" x2=\"" +
             b.substr(0, sp_b) + "\" y2=\"" + b.substr(sp_b + 1) + "\" stroke=\"#2f7d32\" stroke-width=\"" +
             fixed(0.75 * options.stroke * px) + "\"/>\n";
    }
  }

  if (options.labels) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const std::string a = frame.xy(vs[i]);
      const auto sp = a.find(' ');
      out += "<text class=\"label\" x=\"" + a.substr(0, sp) + "\" y=\"" + a.substr(sp + 1) + "\" font-size=\"" +
             fixed(12.0 * px) + "\">" + std::to_string(i) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace extremal::io

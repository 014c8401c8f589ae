#include <cmath>
#include <string>

#include "doctest.h"
#include "extremal/document.hpp"
#include "extremal/errors.hpp"
#include "extremal/optimizer.hpp"
#include "extremal/random.hpp"
#include "extremal/reinhardt.hpp"
#include "extremal/render.hpp"

using namespace extremal;
using namespace extremal::io;

namespace {

PolygonDocument reinhardt_doc(int n) {
  const auto r = reinhardt::construct(reinhardt::regular_signature(n), 1.0);
  PolygonDocument d;
  d.kind = DocumentKind::Reinhardt;
  d.vertices = r.polygon.vertices();
  d.signature = r.signature.parts();
  d.width = r.width;
  d.provenance = {"construct reinhardt --n " + std::to_string(n), 0, config_hash("reinhardt")};
  return d;
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t k = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++k;
  return k;
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_SUITE("document") {

TEST_CASE("round trips are byte identical for every kind") {
  std::vector<PolygonDocument> docs;

  PolygonDocument generic;
  Rng rng(3);
  generic.vertices = random_convex_vertices(11, rng);
  generic.provenance = {"construct regular --n 11", 42, config_hash("x")};
  generic.report = bounds::verify(ConvexPolygon(generic.vertices), "random");
  docs.push_back(generic);

  docs.push_back(reinhardt_doc(15));

  PolygonDocument reuleaux;
  reuleaux.kind = DocumentKind::Reuleaux;
  reuleaux.vertices = reinhardt::build_reuleaux(reinhardt::Composition(5, {1, 1, 1, 1, 1}), 2.0).vertices;
  reuleaux.signature = std::vector<int>{1, 1, 1, 1, 1};
  reuleaux.width = 2.0;
  docs.push_back(reuleaux);

  PolygonDocument optimized;
  optimized.kind = DocumentKind::Optimized;
  optimized.vertices = optimizer::regular_polygon(5, {}).vertices();
  optimized.optimization = OptimizationSummary{"area", "diameter", 1.0, 5, false, false, 0.1 + 0.2, 0.7, 1e-300,
                                               64, true};
  optimized.provenance.seed = 18446744073709551615ULL;
  docs.push_back(optimized);

  for (const auto& d : docs) {
    const std::string once = save(d);
    const PolygonDocument back = load(once);
    CHECK(save(back) == once);
    CHECK(back.vertices == d.vertices);  // exact binary equality
    CHECK(back.kind == d.kind);
    CHECK(back.provenance.seed == d.provenance.seed);
  }
}

TEST_CASE("numbers use the shortest round-trip form") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0) == "1.0");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
  for (double v : {std::sqrt(2.0), 1e-17, -3.5e200, 0.6749814429301042}) CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("config hash is FNV-1a") {
  CHECK(config_hash("") == "cbf29ce484222325");
  CHECK(config_hash("a") == "af63dc4c8601ec8c");
  CHECK(config_hash("foobar") == "85944171f73967e8");
}

TEST_CASE("malformed documents are rejected") {
  const std::string good = save(reinhardt_doc(9));
  CHECK_NOTHROW(load(good));
  CHECK_THROWS_AS(load("{"), MalformedDocument);
  CHECK_THROWS_AS(load("[]"), MalformedDocument);
  CHECK_THROWS_AS(load(replace_once(good, "\"schema_version\": 1", "\"schema_version\": 2")), MalformedDocument);
  CHECK_THROWS_AS(load(replace_once(good, "\"reinhardt\"", "\"banana\"")), MalformedDocument);
  CHECK_THROWS_AS(load(replace_once(good, "\"kind\"", "\"extra\": 1, \"kind\"")), MalformedDocument);
  CHECK_THROWS_AS(load(replace_once(good, "\"reinhardt\"", "\"generic\"")), MalformedDocument);
  CHECK_THROWS_AS(load(replace_once(good, "\"width\":", "\"width\": -1, \"unused\":")), MalformedDocument);
  CHECK_THROWS_AS(load(replace_once(good, "\"command\"", "\"cmd\"")), MalformedDocument);
  CHECK_THROWS_AS(load(replace_once(good, "\"seed\": 0", "\"seed\": -4")), MalformedDocument);
  CHECK_THROWS_AS(load(replace_once(good, "\"signature\": [", "\"signature\": [0, ")), MalformedDocument);

  PolygonDocument two;
  two.vertices = {{0, 0}, {1, 0}};
  CHECK_THROWS_AS(load(save(two)), MalformedDocument);
}

TEST_CASE("report serializations") {
  const auto report = bounds::verify(optimizer::regular_polygon(5, {}), "pentagon");
  const std::string csv = report_csv(report);
  CHECK(csv.rfind("inequality,bound,observed,slack,equality\n", 0) == 0);
  CHECK(count(csv, "\n") == 8);
  CHECK(csv.find("ReinhardtAreaDiameter,") != std::string::npos);
  const std::string json = report_json(report);
  CHECK(json.find("\"polygon_id\": \"pentagon\"") != std::string::npos);
  CHECK(json.find("\"all_hold\": true") != std::string::npos);
}

TEST_CASE("render: regular Reinhardt 30-gon has a 30-vertex path and three arcs") {
  const std::string svg = render_svg(reinhardt_doc(30));
  CHECK(count(svg, "class=\"polygon\"") == 1);
  CHECK(count(svg, " L ") == 29);
  CHECK(count(svg, "class=\"arc\"") == 3);
  CHECK(count(svg, " A 1.000000 1.000000 ") == 3);
  RenderOptions no_arcs;
  no_arcs.show_arcs = false;
  CHECK(count(render_svg(reinhardt_doc(30), no_arcs), "class=\"arc\"") == 0);
}

TEST_CASE("render: unit square and options") {
  PolygonDocument sq;
  sq.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  RenderOptions opt;
  opt.show_diameter_graph = true;
  opt.labels = true;
  const std::string svg = render_svg(sq, opt);
  CHECK(count(svg, " L ") == 3);
  CHECK(count(svg, " Z\"") == 1);
  CHECK(count(svg, "class=\"chord\"") == 2);
  CHECK(count(svg, "class=\"label\"") == 4);
  CHECK(count(svg, "class=\"arc\"") == 0);
  CHECK(svg == render_svg(sq, opt));

  opt.canvas = 0;
  CHECK_THROWS_AS(render_svg(sq, opt), InvalidArgument);
  PolygonDocument bad;
  bad.vertices = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  CHECK_THROWS_AS(render_svg(bad), MalformedDocument);
}

TEST_CASE("render: Graham hexagon highlights a 5-cycle plus pendant") {
  optimizer::SolveConfig cfg;
  cfg.starts = 16;
  PolygonDocument d;
  d.kind = DocumentKind::Generic;
  d.vertices = optimizer::graham_solve(6, cfg).best.vertices();
  RenderOptions opt;
  opt.show_diameter_graph = true;
  CHECK(count(render_svg(d, opt), "class=\"chord\"") == 6);
}

}  // TEST_SUITE

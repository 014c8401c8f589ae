#include "extremal/document.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"

#include "extremal/errors.hpp"

namespace extremal::io {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kKinds[] = {"generic", "reinhardt", "reuleaux", "optimized"};

DocumentKind kind_from_name(const std::string& s) {
  for (std::size_t i = 0; i < std::size(kKinds); ++i) {
    if (kKinds[i] == s) return static_cast<DocumentKind>(i);
  }
  throw MalformedDocument("unknown document kind '" + s + "'");
}

Json report_to_json(const bounds::BoundsReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"inequality", std::string(bounds::name(e.id))},
                       {"bound", e.bound},
                       {"observed", e.observed},
                       {"slack", e.slack},
                       {"equality", e.equality}});
  }
  return {{"polygon_id", r.polygon_id}, {"all_hold", r.all_hold()}, {"entries", std::move(entries)}};
}

void expect_keys(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object()) throw MalformedDocument(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == key;
    if (!ok) throw MalformedDocument("unexpected field '" + key + "' in " + where);
  }
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw MalformedDocument(std::string("missing field '") + key + "' in " + where);
  return *it;
}

double finite_number(const Json& v, const std::string& what) {
  if (!v.is_number()) throw MalformedDocument(what + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw MalformedDocument(what + " must be finite");
  return d;
}

bool boolean(const Json& v, const std::string& what) {
  if (!v.is_boolean()) throw MalformedDocument(what + " must be a boolean");
  return v.get<bool>();
}

std::string string(const Json& v, const std::string& what) {
  if (!v.is_string()) throw MalformedDocument(what + " must be a string");
  return v.get<std::string>();
}

long long integer(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) throw MalformedDocument(what + " must be an integer");
  return v.get<long long>();
}

bounds::BoundsReport report_from_json(const Json& j) {
  expect_keys(j, {"polygon_id", "all_hold", "entries"}, "report");
  bounds::BoundsReport r;
  r.polygon_id = string(require(j, "polygon_id", "report"), "report.polygon_id");
  boolean(require(j, "all_hold", "report"), "report.all_hold");
  const Json& entries = require(j, "entries", "report");
  if (!entries.is_array()) throw MalformedDocument("report.entries must be an array");
  for (const auto& e : entries) {
    expect_keys(e, {"inequality", "bound", "observed", "slack", "equality"}, "report entry");
    bounds::Entry out{bounds::InequalityId::ZenodorusIsoperimetric};
    try {
      out.id = bounds::inequality_from_name(string(require(e, "inequality", "report entry"), "inequality"));
    } catch (const InvalidArgument& ex) {
      throw MalformedDocument(ex.what());
    }
    out.bound = finite_number(require(e, "bound", "report entry"), "bound");
    out.observed = finite_number(require(e, "observed", "report entry"), "observed");
    out.slack = finite_number(require(e, "slack", "report entry"), "slack");
    out.equality = boolean(require(e, "equality", "report entry"), "equality");
    r.entries.push_back(out);
  }
  return r;
}

}  // namespace

std::string_view name(DocumentKind k) { return kKinds[static_cast<std::size_t>(k)]; }

std::string format_number(double v) { return Json(v).dump(); }

std::string save(const PolygonDocument& doc) {
  Json j;
  j["schema_version"] = doc.schema_version;
  j["kind"] = std::string(name(doc.kind));
  Json verts = Json::array();
  for (const auto& p : doc.vertices) verts.push_back(Json::array({p.x, p.y}));
  j["vertices"] = std::move(verts);
  if (doc.signature) j["signature"] = *doc.signature;
  if (doc.width) j["width"] = *doc.width;
  if (doc.optimization) {
    const auto& o = *doc.optimization;
    j["optimization"] = {{"objective", o.objective},   {"constraint", o.constraint},
                         {"constraint_value", o.constraint_value},
                         {"n", o.n},                   {"equilateral", o.equilateral},
                         {"graham", o.graham},         {"value", o.value},
                         {"bound", o.bound},           {"gap", o.gap},
                         {"starts", o.starts},         {"converged", o.converged}};
  }
  j["provenance"] = {{"command", doc.provenance.command},
                     {"seed", doc.provenance.seed},
                     {"config_hash", doc.provenance.config_hash}};
  if (doc.report) j["report"] = report_to_json(*doc.report);
  return j.dump(2) + "\n";
}

PolygonDocument load(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    throw MalformedDocument(std::string("invalid JSON: ") + e.what());
  }
  expect_keys(j, {"schema_version", "kind", "vertices", "signature", "width", "optimization", "provenance", "report"},
              "document");
  PolygonDocument doc;
  doc.schema_version = static_cast<int>(integer(require(j, "schema_version", "document"), "schema_version"));
  if (doc.schema_version != kSchemaVersion) {
    throw MalformedDocument("unsupported schema_version " + std::to_string(doc.schema_version));
  }
  doc.kind = kind_from_name(string(require(j, "kind", "document"), "kind"));

  const Json& verts = require(j, "vertices", "document");
  if (!verts.is_array() || verts.size() < 3) throw MalformedDocument("vertices must be an array of at least 3 points");
  for (const auto& v : verts) {
    if (!v.is_array() || v.size() != 2) throw MalformedDocument("each vertex must be an [x, y] pair");
    doc.vertices.push_back({finite_number(v[0], "vertex x"), finite_number(v[1], "vertex y")});
  }

  const bool reuleaux_like = doc.kind == DocumentKind::Reinhardt || doc.kind == DocumentKind::Reuleaux;
  if (reuleaux_like != j.contains("signature") || reuleaux_like != j.contains("width")) {
    throw MalformedDocument("signature and width are required for, and only for, reinhardt and reuleaux documents");
  }
  if (reuleaux_like) {
    const Json& sig = j["signature"];
    if (!sig.is_array() || sig.empty()) throw MalformedDocument("signature must be a non-empty integer array");
    std::vector<int> parts;
    for (const auto& c : sig) {
      const long long v = integer(c, "signature entry");
      if (v < 1 || v > 1'000'000) throw MalformedDocument("signature entries must be positive");
      parts.push_back(static_cast<int>(v));
    }
    doc.signature = std::move(parts);
    doc.width = finite_number(j["width"], "width");
    if (!(*doc.width > 0.0)) throw MalformedDocument("width must be positive");
  }

  if ((doc.kind == DocumentKind::Optimized) != j.contains("optimization")) {
    throw MalformedDocument("optimization block is required for, and only for, optimized documents");
  }
  if (doc.kind == DocumentKind::Optimized) {
    const Json& o = j["optimization"];
    const std::string w = "optimization";
    expect_keys(o, {"objective", "constraint", "constraint_value", "n", "equilateral", "graham", "value", "bound",
                    "gap", "starts", "converged"},
                w);
    OptimizationSummary s;
    s.objective = string(require(o, "objective", w), "objective");
    s.constraint = string(require(o, "constraint", w), "constraint");
    s.constraint_value = finite_number(require(o, "constraint_value", w), "constraint_value");
    s.n = static_cast<int>(integer(require(o, "n", w), "n"));
    s.equilateral = boolean(require(o, "equilateral", w), "equilateral");
    s.graham = boolean(require(o, "graham", w), "graham");
    s.value = finite_number(require(o, "value", w), "value");
    s.bound = finite_number(require(o, "bound", w), "bound");
    s.gap = finite_number(require(o, "gap", w), "gap");
    s.starts = static_cast<int>(integer(require(o, "starts", w), "starts"));
    s.converged = boolean(require(o, "converged", w), "converged");
    doc.optimization = s;
  }

  const Json& prov = require(j, "provenance", "document");
  expect_keys(prov, {"command", "seed", "config_hash"}, "provenance");
  doc.provenance.command = string(require(prov, "command", "provenance"), "provenance.command");
  const Json& seed = require(prov, "seed", "provenance");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    throw MalformedDocument("provenance.seed must be a non-negative integer");
  }
  doc.provenance.seed = seed.get<std::uint64_t>();
  doc.provenance.config_hash = string(require(prov, "config_hash", "provenance"), "provenance.config_hash");

  if (j.contains("report")) doc.report = report_from_json(j["report"]);
  return doc;
}

std::string config_hash(std::string_view canonical_config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_config) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string report_csv(const bounds::BoundsReport& r) {
  std::string out = "inequality,bound,observed,slack,equality\n";
  for (const auto& e : r.entries) {
    out += std::string(bounds::name(e.id)) + "," + format_number(e.bound) + "," + format_number(e.observed) + "," +
           format_number(e.slack) + "," + (e.equality ? "true" : "false") + "\n";
  }
  return out;
}

std::string report_json(const bounds::BoundsReport& r) { return report_to_json(r).dump(2) + "\n"; }

}  // namespace extremal::io

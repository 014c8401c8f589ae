// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Usage: acceptance [artifact-dir]

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "extremal/bounds.hpp"
#include "extremal/commands.hpp"
#include "extremal/document.hpp"
#include "extremal/geometry.hpp"
#include "extremal/optimizer.hpp"
#include "extremal/random.hpp"
#include "extremal/reinhardt.hpp"
#include "extremal/render.hpp"

namespace fs = std::filesystem;
using namespace extremal;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  failures += !o.pass;
  std::printf("%s %2d %s%s%s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.empty() ? "" : " | ",
              o.detail.c_str());
  std::fflush(stdout);
}

io::PolygonDocument reinhardt_document(const reinhardt::ReinhardtPolygon& r) {
  io::PolygonDocument d;
  d.kind = io::DocumentKind::Reinhardt;
  d.vertices = r.polygon.vertices();
  d.signature = r.signature.parts();
  d.width = r.width;
  d.provenance.command = "construct reinhardt --n " + std::to_string(r.signature.n()) + " --signature " +
                         reinhardt::to_string(r.signature);
  d.provenance.config_hash = io::config_hash(d.provenance.command);
  return d;
}

std::vector<ConvexPolygon> random_corpus() {
  std::vector<ConvexPolygon> out;
  Rng rng(20240917);
  out.reserve(10000);
  for (int i = 0; i < 10000; ++i) out.push_back(random_convex_polygon(static_cast<std::size_t>(3 + rng.below(18)), rng));
  return out;
}

struct CliRun {
  int code;
  std::string out;
};

CliRun invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "extremal");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path artifacts = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_artifacts");
  fs::create_directories(artifacts);

  report(1, "equality attainment of constructed Reinhardt polygons", [] {
    Outcome o;
    double worst = 0.0;
    for (int n : {3, 5, 6, 7, 9, 10, 12, 15, 30}) {
      const auto r = reinhardt::construct(reinhardt::regular_signature(n), 1.0);
      const Metrics m = metrics(r.polygon);
      const double ep = std::abs(m.perimeter - 2 * n * std::sin(pi / (2 * n)));
      const double ew = std::abs(m.width - std::cos(pi / (2 * n)));
      const double ed = std::abs(m.diameter - 1);
      worst = std::max({worst, ep, ew, ed});
      o.require(r.polygon.size() == static_cast<std::size_t>(n), "n=" + std::to_string(n) + " vertex count");
      o.require(ep <= 1e-9 && ew <= 1e-9 && ed <= 1e-9, "n=" + std::to_string(n) + " off by " + num(std::max({ep, ew, ed})));
    }
    if (o.pass) o.detail = "max error " + num(worst);
    return o;
  });

  report(2, "no signatures for powers of two (exact and numeric)", [] {
    Outcome o;
    for (int n : {4, 8, 16, 32}) {
      o.require(reinhardt::enumerate(n, reinhardt::ValidityMode::exact()).empty(), "exact n=" + std::to_string(n));
      o.require(reinhardt::enumerate(n, reinhardt::ValidityMode::numeric()).empty(), "numeric n=" + std::to_string(n));
    }
    return o;
  });

  report(3, "sporadic class at n = 30, regular and sporadic SVGs written", [&artifacts] {
    Outcome o;
    const auto classes = reinhardt::enumerate(30);
    const auto c = reinhardt::census(classes);
    o.require(c.sporadic >= 1, "no sporadic class");
    const reinhardt::EnumeratedClass* sporadic = nullptr;
    for (const auto& cls : classes) {
      if (cls.symmetry.kind == reinhardt::SymmetryClass::Kind::Sporadic) {
        sporadic = &cls;
        break;
      }
    }
    if (!sporadic) return o;
    const auto regular = reinhardt::construct(reinhardt::regular_signature(30), 1.0);
    const auto odd = reinhardt::construct(sporadic->signature, 1.0);
    o.require(bounds::verify(odd.polygon).all_hold(), "sporadic polygon fails verify");
    const std::string a = io::render_svg(reinhardt_document(regular));
    const std::string b = io::render_svg(reinhardt_document(odd));
    std::ofstream(artifacts / "reinhardt_30_regular.svg", std::ios::binary) << a;
    std::ofstream(artifacts / "reinhardt_30_sporadic.svg", std::ios::binary) << b;
    o.require(fs::file_size(artifacts / "reinhardt_30_regular.svg") == a.size(), "regular SVG not written");
    o.require(fs::file_size(artifacts / "reinhardt_30_sporadic.svg") == b.size(), "sporadic SVG not written");
    if (o.pass) {
      o.detail = std::to_string(c.periodic) + " periodic, " + std::to_string(c.sporadic) + " sporadic; sporadic " +
                 reinhardt::to_string(sporadic->signature, ' ');
    }
    return o;
  });

  report(4, "quadrilateral of unit diameter: area 1/2, perpendicular unit diagonals", [] {
    Outcome o;
    const auto r = optimizer::solve({optimizer::Objective::MaximizeArea, optimizer::ConstraintKind::DiameterAtMost,
                                     1.0, 4, false});
    o.require(std::abs(r.value - 0.5) <= 1e-6, "area " + num(r.value));
    const Point d1 = r.best[2] - r.best[0];
    const Point d2 = r.best[3] - r.best[1];
    o.require(std::abs(norm(d1) - 1) <= 1e-6 && std::abs(norm(d2) - 1) <= 1e-6, "diagonal lengths");
    o.require(std::abs(dot(d1, d2)) <= 1e-6, "diagonals not perpendicular");
    if (o.pass) o.detail = "area error " + num(std::abs(r.value - 0.5));
    return o;
  });

  report(5, "odd n in {3,5,7}: optimizer reaches the regular polygon area", [] {
    Outcome o;
    double worst = 0.0;
    for (int n : {3, 5, 7}) {
      const auto r = optimizer::solve({optimizer::Objective::MaximizeArea, optimizer::ConstraintKind::DiameterAtMost,
                                       1.0, n, false});
      const double target = (n / 2.0) * std::cos(pi / n) * std::tan(pi / (2 * n));
      const double err = std::abs(r.value - target);
      worst = std::max(worst, err);
      o.require(err <= 1e-5, "n=" + std::to_string(n) + " off by " + num(err));
    }
    if (o.pass) o.detail = "max error " + num(worst);
    return o;
  });

  report(6, "Graham hexagon beats the regular hexagon and matches a dense multistart", [] {
    Outcome o;
    const auto g = optimizer::graham_solve(6);
    optimizer::SolveConfig dense;
    dense.starts = 512;
    dense.seed = 7;
    const auto oracle = optimizer::solve(
        {optimizer::Objective::MaximizeArea, optimizer::ConstraintKind::DiameterAtMost, 1.0, 6, false}, dense);
    const double regular = 3 * std::sqrt(3.0) / 8;
    o.require(g.value - regular >= 0.02, "excess " + num(g.value - regular));
    o.require(std::abs(g.value - oracle.value) <= 1e-5, "oracle mismatch " + num(std::abs(g.value - oracle.value)));
    o.require(optimizer::is_cycle_plus_pendant(diameter_graph(g.best, 1e-6)), "diameter graph shape");
    if (o.pass) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "graham %.10f, oracle %.10f", g.value, oracle.value);
      o.detail = buf;
    }
    return o;
  });

  const std::vector<ConvexPolygon> corpus = random_corpus();

  report(7, "10^4 random polygons pass verify and the symmetrization chain", [&corpus] {
    Outcome o;
    std::size_t bad_verify = 0, bad_chain = 0;
    double min_slack = INFINITY;
    for (const auto& p : corpus) {
      const auto r = bounds::verify(p);
      bool ok = true;
      for (const auto& e : r.entries) {
        const double rel = e.slack / std::max(1.0, std::abs(e.bound));
        min_slack = std::min(min_slack, rel);
        ok = ok && rel >= -1e-9;
      }
      bad_verify += !ok;
      bad_chain += !bounds::symmetrization_chain_check(p).holds;
    }
    o.require(bad_verify == 0, std::to_string(bad_verify) + " verify failures");
    o.require(bad_chain == 0, std::to_string(bad_chain) + " chain failures");
    if (o.pass) o.detail = "min relative slack " + num(min_slack);
    return o;
  });

  report(8, "symmetrization preserves w, d, p with radii (w/2, d/2)", [&corpus] {
    Outcome o;
    double worst = 0.0;
    std::size_t bad = 0;
    for (const auto& p : corpus) {
      const ConvexPolygon s = central_symmetrize(p);
      const Metrics a = metrics(p);
      const Metrics b = metrics(s);
      const Radii r = symmetric_radii(s);
      const double err = std::max({std::abs(a.width - b.width), std::abs(a.diameter - b.diameter),
                                   std::abs(a.perimeter - b.perimeter), std::abs(r.inradius - a.width / 2),
                                   std::abs(r.circumradius - a.diameter / 2)});
      worst = std::max(worst, err);
      bad += err > 1e-9 || s.size() > 2 * p.size();
    }
    o.require(bad == 0, std::to_string(bad) + " polygons out of tolerance");
    if (o.pass) o.detail = "max error " + num(worst);
    return o;
  });

  report(9, "Audet-Ninin family and the equilateral width-constrained optimizer", [] {
    Outcome o;
    const double side = 2 / std::sqrt(3.0);
    for (int n : {3, 5, 7, 9}) {
      const ConvexPolygon p = optimizer::audet_ninin_polygon(n, 1.0);
      double se = 0.0;
      for (double s : side_lengths(p)) se = std::max(se, std::abs(s - side));
      const std::string tag = "n=" + std::to_string(n);
      o.require(p.size() == static_cast<std::size_t>(n), tag + " vertex count");
      o.require(se <= 1e-12, tag + " side error " + num(se));
      o.require(std::abs(width(p) - 1) <= 1e-9, tag + " width " + num(width(p)));
      o.require(std::abs(perimeter(p) - n * side) <= 1e-9, tag + " perimeter " + num(perimeter(p)));
    }
    double worst = -INFINITY;
    for (int n : {3, 5, 7}) {
      const auto r = optimizer::solve(
          {optimizer::Objective::MaximizePerimeter, optimizer::ConstraintKind::WidthAtLeast, 1.0, n, true});
      const double excess = r.value - n * side;
      worst = std::max(worst, excess);
      o.require(excess <= 1e-5, "optimizer n=" + std::to_string(n) + " exceeds by " + num(excess));
    }
    if (o.pass) o.detail = "max optimizer excess " + num(worst);
    return o;
  });

  report(10, "every CLI command is byte-deterministic", [&artifacts] {
    Outcome o;
    const fs::path dir = artifacts / "determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string r30 = (dir / "r30.json").string();
    const std::string opt = (dir / "opt.json").string();
    const std::vector<std::vector<std::string>> commands = {
        {"bounds", "--n", "7", "--d", "1"},
        {"bounds", "--n", "6", "--w", "1", "--format", "csv"},
        {"bounds", "--n", "5", "--p", "2", "--format", "json"},
        {"construct", "reinhardt", "--n", "30", "--verify", "--out", "-"},
        {"construct", "reuleaux", "--n", "15", "--out", "-"},
        {"construct", "regular", "--n", "8", "--side", "1", "--out", "-"},
        {"construct", "audet-ninin", "--n", "9", "--w", "1", "--verify", "--out", "-"},
        {"enumerate", "--n", "30"},
        {"enumerate", "--n", "45", "--census"},
        {"optimize", "--objective", "area", "--constraint", "diameter=1", "--n", "6", "--graham", "--seed", "3",
         "--out", "-"},
        {"optimize", "--objective", "perimeter", "--constraint", "width=1", "--n", "5", "--equilateral", "--seed",
         "11", "--starts", "16", "--threads", "2", "--out", "-"},
    };
    std::size_t checked = 0;
    for (const auto& cmd : commands) {
      const CliRun a = invoke(cmd);
      const CliRun b = invoke(cmd);
      std::string label;
      for (const auto& s : cmd) label += (label.empty() ? "" : " ") + s;
      o.require(a.code == 0, "'" + label + "' exit " + std::to_string(a.code));
      o.require(a.out == b.out && !a.out.empty(), "'" + label + "' differs");
      ++checked;
    }
    // File outputs, then render and verify on them.
    for (const auto& [path, cmd] :
         std::vector<std::pair<std::string, std::vector<std::string>>>{
             {r30, {"construct", "reinhardt", "--n", "30", "--out", r30}},
             {opt, {"optimize", "--objective", "area", "--constraint", "diameter=1", "--n", "7", "--seed", "5",
                    "--out", opt}}}) {
      o.require(invoke(cmd).code == 0, "write " + path);
      const std::string first = slurp(path);
      o.require(invoke(cmd).code == 0, "rewrite " + path);
      o.require(first == slurp(path) && !first.empty(), path + " differs");
      for (const auto& tail : std::vector<std::vector<std::string>>{
               {"render", path, "--chords", "--labels", "--out", "-"}, {"verify", path}, {"verify", path, "--format", "json"}}) {
        const CliRun a = invoke(tail);
        const CliRun b = invoke(tail);
        o.require(a.code == 0 && a.out == b.out && !a.out.empty(), tail[0] + " on " + path + " differs");
        ++checked;
      }
      checked += 1;
    }
    if (o.pass) o.detail = std::to_string(checked) + " invocations repeated";
    return o;
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

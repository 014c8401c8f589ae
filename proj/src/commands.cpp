#include "extremal/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "extremal/bounds.hpp"
#include "extremal/document.hpp"
#include "extremal/errors.hpp"
#include "extremal/optimizer.hpp"
#include "extremal/reinhardt.hpp"
#include "extremal/render.hpp"

namespace extremal::cli {

namespace {

namespace fs = std::filesystem;
using io::format_number;

// Destination rules: "--out -" is stdout, "--out path" a file; without
// --out, <$EXTREMAL_OUT_DIR>/<default_name> when the variable is set, else
// stdout.
void emit(const std::string& text, const std::string& out_flag, const std::string& default_name, std::ostream& out,
          std::ostream& err) {
  fs::path target;
  if (out_flag == "-") {
    out << text;
    return;
  }
  if (!out_flag.empty()) {
    target = out_flag;
  } else if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0') {
    fs::create_directories(dir);
    target = fs::path(dir) / default_name;
  } else {
    out << text;
    return;
  }
  std::ofstream f(target, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + target.string());
  f << text;
  if (!f) throw InvalidArgument("cannot write " + target.string());
  err << "wrote " << target.string() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string join(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw InvalidArgument("signature entry '" + token + "' is not an integer");
    out.push_back(v);
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  if (out.empty()) throw InvalidArgument("empty signature");
  return out;
}

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) throw InvalidArgument(std::string(what) + " must be positive");
}

io::PolygonDocument make_document(io::DocumentKind kind, const std::vector<Point>& vertices,
                                  const std::string& command, std::uint64_t seed) {
  io::PolygonDocument doc;
  doc.kind = kind;
  doc.vertices = vertices;
  doc.provenance = {command, seed, io::config_hash(command)};
  return doc;
}

// ---- bounds ---------------------------------------------------------------

struct BoundsArgs {
  int n = 0;
  double p = 1.0;
  double d = 1.0;
  double w = 1.0;
  std::string format = "table";
};

std::string_view bounded_quantity(bounds::InequalityId id) {
  using bounds::InequalityId;
  switch (id) {
    case InequalityId::ReinhardtPerimeterDiameter:
    case InequalityId::GashkovPerimeterWidth: return "perimeter";
    case InequalityId::GashkovWidthDiameter: return "width";
    default: return "area";
  }
}

std::string_view given_name(bounds::Given g) {
  switch (g) {
    case bounds::Given::Perimeter: return "perimeter";
    case bounds::Given::Diameter: return "diameter";
    case bounds::Given::Width: return "width";
  }
  return "";
}

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  require_positive(a.p, "--p");
  require_positive(a.d, "--d");
  require_positive(a.w, "--w");
  struct Row {
    bounds::InequalityId id;
    double given;
    double bound;
    bool attainable;
  };
  std::vector<Row> rows;
  for (auto id : bounds::kAllInequalities) {
    const bounds::Given g = bounds::given_quantity(id);
    const double v = g == bounds::Given::Perimeter ? a.p : g == bounds::Given::Diameter ? a.d : a.w;
    rows.push_back({id, v, bounds::bound_value(id, a.n, v), bounds::attainable(id, a.n)});
  }
  if (a.format == "csv") {
    out << "inequality,quantity,sense,given,given_value,bound,attainable\n";
    for (const auto& r : rows) {
      out << bounds::name(r.id) << ',' << bounded_quantity(r.id) << ',' << (bounds::is_upper_bound(r.id) ? "max" : "min")
          << ',' << given_name(bounds::given_quantity(r.id)) << ',' << format_number(r.given) << ','
          << format_number(r.bound) << ',' << (r.attainable ? "yes" : "no") << '\n';
    }
  } else if (a.format == "json") {
    out << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out << "  {\"inequality\": \"" << bounds::name(r.id) << "\", \"quantity\": \"" << bounded_quantity(r.id)
          << "\", \"sense\": \"" << (bounds::is_upper_bound(r.id) ? "max" : "min") << "\", \"given\": \""
          << given_name(bounds::given_quantity(r.id)) << "\", \"given_value\": " << format_number(r.given)
          << ", \"bound\": " << format_number(r.bound) << ", \"attainable\": " << (r.attainable ? "true" : "false")
          << "}" << (i + 1 < rows.size() ? "," : "") << "\n";
    }
    out << "]\n";
  } else {
    char line[256];
    std::snprintf(line, sizeof line, "%-28s %-10s %-4s %-15s %-16s %s\n", "inequality", "quantity", "", "given",
                  "bound", "attainable");
    out << line;
    for (const auto& r : rows) {
      const std::string given = std::string(given_name(bounds::given_quantity(r.id))) + "=" + format_number(r.given);
      std::snprintf(line, sizeof line, "%-28s %-10s %-4s %-15s %-16.12f %s\n", std::string(bounds::name(r.id)).c_str(),
                    std::string(bounded_quantity(r.id)).c_str(), bounds::is_upper_bound(r.id) ? "<=" : ">=",
                    given.c_str(), r.bound, r.attainable ? "yes" : "no");
      out << line;
    }
  }
  return kOk;
}

// ---- construct ------------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  int n = 0;
  std::string signature = "auto-regular";
  std::optional<double> d;
  std::optional<double> w;
  std::optional<double> side;
  bool verify = false;
  std::string out;
};

reinhardt::Composition parse_signature(const ConstructArgs& a) {
  if (a.signature == "auto-regular") {
    if (a.n <= 0) throw InvalidArgument("--n is required with --signature auto-regular");
    return reinhardt::regular_signature(a.n);
  }
  std::vector<int> parts = parse_int_list(a.signature);
  long long sum = 0;
  for (int c : parts) sum += c;
  const int n = a.n > 0 ? a.n : static_cast<int>(sum);
  return reinhardt::Composition(n, std::move(parts));
}

int cmd_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err) {
  io::PolygonDocument doc;
  std::string name;
  if (a.kind == "reinhardt" || a.kind == "reuleaux") {
    if (a.w || a.side) throw InvalidArgument("--w and --side do not apply to " + a.kind);
    const double d = a.d.value_or(1.0);
    require_positive(d, "--d");
    const reinhardt::Composition c = parse_signature(a);
    const std::string command = "construct " + a.kind + " --n " + std::to_string(c.n()) + " --signature " +
                                reinhardt::to_string(c) + " --d " + format_number(d);
    if (a.kind == "reinhardt") {
      const auto r = reinhardt::construct(c, d);
      doc = make_document(io::DocumentKind::Reinhardt, r.polygon.vertices(), command, 0);
    } else {
      const auto r = reinhardt::build_reuleaux(c, d);
      doc = make_document(io::DocumentKind::Reuleaux, ConvexPolygon(r.vertices).vertices(), command, 0);
    }
    doc.signature = c.parts();
    doc.width = d;
    name = a.kind + "-" + std::to_string(c.n()) + ".json";
  } else if (a.kind == "regular") {
    if (a.n < 3) throw InvalidArgument("--n >= 3 is required for regular");
    const int given = (a.d ? 1 : 0) + (a.w ? 1 : 0) + (a.side ? 1 : 0);
    if (given > 1) throw InvalidArgument("give at most one of --d, --w, --side");
    optimizer::RegularSpec spec{optimizer::RegularSpec::Kind::Diameter, a.d.value_or(1.0)};
    std::string what = "--d";
    if (a.w) {
      spec = {optimizer::RegularSpec::Kind::Width, *a.w};
      what = "--w";
    } else if (a.side) {
      spec = {optimizer::RegularSpec::Kind::Side, *a.side};
      what = "--side";
    }
    const std::string command =
        "construct regular --n " + std::to_string(a.n) + " " + what + " " + format_number(spec.value);
    doc = make_document(io::DocumentKind::Generic, optimizer::regular_polygon(a.n, spec).vertices(), command, 0);
    name = "regular-" + std::to_string(a.n) + ".json";
  } else {
    if (a.d || a.side) throw InvalidArgument("audet-ninin takes --n and --w only");
    const double w = a.w.value_or(1.0);
    const std::string command = "construct audet-ninin --n " + std::to_string(a.n) + " --w " + format_number(w);
    doc = make_document(io::DocumentKind::Generic, optimizer::audet_ninin_polygon(a.n, w).vertices(), command, 0);
    name = "audet-ninin-" + std::to_string(a.n) + ".json";
  }
  if (a.verify) doc.report = bounds::verify(ConvexPolygon(doc.vertices), name.substr(0, name.size() - 5));
  emit(io::save(doc), a.out, name, out, err);
  return kOk;
}

// ---- enumerate ------------------------------------------------------------

struct EnumerateArgs {
  int n = 0;
  bool census = false;
  std::string mode = "exact";
  double tol = 1e-9;
  int max_n = reinhardt::EnumerationLimits{}.max_n;
  std::uint64_t max_candidates = reinhardt::EnumerationLimits{}.max_candidates;
  std::string out;
};

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out, std::ostream& err) {
  const auto mode = a.mode == "numeric" ? reinhardt::ValidityMode::numeric(a.tol) : reinhardt::ValidityMode::exact();
  const auto classes = reinhardt::enumerate(a.n, mode, {a.max_n, a.max_candidates});
  std::string text;
  if (a.census) {
    const auto c = reinhardt::census(classes);
    text = "n,periodic,sporadic\n" + std::to_string(a.n) + "," + std::to_string(c.periodic) + "," +
           std::to_string(c.sporadic) + "\n";
  } else {
    text = "n,m,signature,class,k\n";
    for (const auto& e : classes) {
      const bool periodic = e.symmetry.kind == reinhardt::SymmetryClass::Kind::Periodic;
      text += std::to_string(a.n) + "," + std::to_string(e.signature.m()) + "," + join(e.signature.parts(), ' ') +
              "," + (periodic ? "periodic" : "sporadic") + "," + std::to_string(e.symmetry.k) + "\n";
    }
  }
  emit(text, a.out, "enumerate-" + std::to_string(a.n) + (a.census ? "-census" : "") + ".csv", out, err);
  return kOk;
}

// ---- optimize -------------------------------------------------------------

struct OptimizeArgs {
  std::string objective;
  std::string constraint;
  int n = 0;
  bool equilateral = false;
  bool graham = false;
  std::uint64_t seed = 0;
  int starts = 64;
  int max_iterations = 2000;
  unsigned threads = 1;
  int max_n = 16;
  bool progress = false;
  std::string out;
};

int cmd_optimize(const OptimizeArgs& a, std::ostream& out, std::ostream& err) {
  optimizer::OptimizationProblem problem;
  problem.n = a.n;
  problem.equilateral = a.equilateral;
  if (a.objective == "area") {
    problem.objective = optimizer::Objective::MaximizeArea;
  } else if (a.objective == "perimeter") {
    problem.objective = optimizer::Objective::MaximizePerimeter;
  } else {
    problem.objective = optimizer::Objective::MaximizeWidth;
  }
  const auto eq = a.constraint.find('=');
  if (eq == std::string::npos) throw InvalidArgument("--constraint expects kind=value, e.g. diameter=1");
  const std::string kind = a.constraint.substr(0, eq);
  const std::string value = a.constraint.substr(eq + 1);
  if (kind == "diameter") {
    problem.constraint = optimizer::ConstraintKind::DiameterAtMost;
  } else if (kind == "perimeter") {
    problem.constraint = optimizer::ConstraintKind::PerimeterAtMost;
  } else if (kind == "width") {
    problem.constraint = optimizer::ConstraintKind::WidthAtLeast;
  } else {
    throw InvalidArgument("unknown constraint '" + kind + "'");
  }
  try {
    std::size_t used = 0;
    problem.value = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InvalidArgument("constraint value '" + value + "' is not a number");
  }
  require_positive(problem.value, "constraint value");

  optimizer::SolveConfig config;
  config.starts = a.starts;
  config.seed = a.seed;
  config.max_iterations = a.max_iterations;
  config.threads = a.threads;
  config.max_n = a.max_n;
  if (a.starts < 1 || a.max_iterations < 1) throw InvalidArgument("--starts and --max-iterations must be positive");
  if (a.progress) {
    config.progress = [&err](int i, double v) { err << "progress," << i << "," << format_number(v) << "\n"; };
  }

  std::string command = "optimize --objective " + a.objective + " --constraint " + kind + "=" +
                        format_number(problem.value) + " --n " + std::to_string(a.n);
  if (a.equilateral) command += " --equilateral";
  if (a.graham) command += " --graham";
  command += " --seed " + std::to_string(a.seed) + " --starts " + std::to_string(a.starts) + " --max-iterations " +
             std::to_string(a.max_iterations);

  optimizer::OptimizationResult result = [&] {
    if (!a.graham) return optimizer::solve(problem, config);
    if (problem.objective != optimizer::Objective::MaximizeArea ||
        problem.constraint != optimizer::ConstraintKind::DiameterAtMost || a.equilateral) {
      throw InvalidArgument("--graham applies to --objective area --constraint diameter=v only");
    }
    auto r = optimizer::graham_solve(a.n, config);
    const double v = problem.value;
    r.best = scaled(r.best, v);
    r.value = metrics(r.best).area;
    r.bound *= v * v;
    r.gap = r.bound - r.value;
    return r;
  }();

  io::PolygonDocument doc = make_document(io::DocumentKind::Optimized, result.best.vertices(), command, a.seed);
  doc.optimization = io::OptimizationSummary{a.objective,   kind,         problem.value, a.n,
                                             a.equilateral, a.graham,     result.value,  result.bound,
                                             result.gap,    result.starts, result.converged};
  // Without --out or an output directory only the summary is printed.
  if (!a.out.empty() || std::getenv(kOutDirEnv) != nullptr) {
    emit(io::save(doc), a.out,
         "optimized-" + a.objective + "-" + kind + "-" + std::to_string(a.n) + (a.graham ? "-graham" : "") + ".json",
         out, err);
  }
  out << "objective,constraint,n,value,bound,gap,starts,seed,converged\n"
      << a.objective << ',' << kind << '=' << format_number(problem.value) << ',' << a.n << ','
      << format_number(result.value) << ',' << format_number(result.bound) << ',' << format_number(result.gap) << ','
      << result.starts << ',' << a.seed << ',' << (result.converged ? "true" : "false") << '\n';
  return kOk;
}

// ---- render / verify ------------------------------------------------------

struct RenderArgs {
  std::string path;
  std::string out;
  io::RenderOptions options;
  bool no_arcs = false;
};

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

io::PolygonDocument load_file(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw MalformedDocument("cannot read document " + path);
  return io::load(read_file(path));
}

int cmd_render(const RenderArgs& a, std::ostream& out, std::ostream& err) {
  const io::PolygonDocument doc = load_file(a.path);
  io::RenderOptions options = a.options;
  options.show_arcs = !a.no_arcs;
  emit(io::render_svg(doc, options), a.out, stem_of(a.path) + ".svg", out, err);
  return kOk;
}

struct VerifyArgs {
  std::string path;
  std::string format = "csv";
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const io::PolygonDocument doc = load_file(a.path);
  std::optional<ConvexPolygon> poly;
  try {
    poly.emplace(doc.vertices);
  } catch (const InvalidPolygon& e) {
    err << "violation: vertices are not a convex polygon (" << e.what() << ", vertex " << e.index() << ")\n";
    return kVerifyFailed;
  }
  const bounds::BoundsReport report = bounds::verify(*poly, stem_of(a.path));
  const std::string text = a.format == "json" ? io::report_json(report) : io::report_csv(report);
  emit(text, a.out.empty() ? "-" : a.out, "", out, err);
  if (report.all_hold()) return kOk;
  for (const auto& e : report.entries) {
    if (e.slack < -1e-9 * std::max(1.0, std::abs(e.bound))) {
      err << "violation: " << bounds::name(e.id) << " bound " << format_number(e.bound) << " observed "
          << format_number(e.observed) << "\n";
    }
  }
  return kVerifyFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal convex polygons: bounds, Reinhardt constructions, enumeration, optimization."};
  app.name("extremal");
  app.require_subcommand(1);

  BoundsArgs bounds_args;
  auto* bounds_cmd = app.add_subcommand("bounds", "Print the seven closed-form bounds for n");
  bounds_cmd->add_option("--n", bounds_args.n, "Number of vertices")->required();
  bounds_cmd->add_option("--p", bounds_args.p, "Perimeter normalization");
  bounds_cmd->add_option("--d", bounds_args.d, "Diameter normalization");
  bounds_cmd->add_option("--w", bounds_args.w, "Width normalization");
  bounds_cmd->add_option("--format", bounds_args.format)->check(CLI::IsMember({"table", "csv", "json"}));

  ConstructArgs construct_args;
  auto* construct_cmd = app.add_subcommand("construct", "Build a polygon document");
  construct_cmd->add_option("kind", construct_args.kind)
      ->required()
      ->check(CLI::IsMember({"reinhardt", "reuleaux", "regular", "audet-ninin"}));
  construct_cmd->add_option("--n", construct_args.n, "Number of vertices");
  construct_cmd->add_option("--signature", construct_args.signature, "Comma-separated parts or auto-regular");
  construct_cmd->add_option("--d", construct_args.d, "Diameter");
  construct_cmd->add_option("--w", construct_args.w, "Width");
  construct_cmd->add_option("--side", construct_args.side, "Side length (regular)");
  construct_cmd->add_flag("--verify", construct_args.verify, "Attach a bounds report");
  construct_cmd->add_option("--out", construct_args.out, "Output file, - for stdout");

  EnumerateArgs enumerate_args;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "List Reinhardt signatures of n up to symmetry");
  enumerate_cmd->add_option("--n", enumerate_args.n)->required();
  enumerate_cmd->add_flag("--census", enumerate_args.census, "Print periodic/sporadic counts only");
  enumerate_cmd->add_option("--mode", enumerate_args.mode)->check(CLI::IsMember({"exact", "numeric"}));
  enumerate_cmd->add_option("--tol", enumerate_args.tol, "Closure tolerance in numeric mode");
  enumerate_cmd->add_option("--max-n", enumerate_args.max_n, "Override the n cap");
  enumerate_cmd->add_option("--max-candidates", enumerate_args.max_candidates, "Override the candidate cap");
  enumerate_cmd->add_option("--out", enumerate_args.out, "Output file, - for stdout");

  OptimizeArgs optimize_args;
  auto* optimize_cmd = app.add_subcommand("optimize", "Multistart search for an extremal n-gon");
  optimize_cmd->add_option("--objective", optimize_args.objective)
      ->required()
      ->check(CLI::IsMember({"area", "perimeter", "width"}));
  optimize_cmd->add_option("--constraint", optimize_args.constraint, "diameter=v, perimeter=v or width=v")
      ->required();
  optimize_cmd->add_option("--n", optimize_args.n)->required();
  optimize_cmd->add_flag("--equilateral", optimize_args.equilateral);
  optimize_cmd->add_flag("--graham", optimize_args.graham, "Cycle-plus-pendant search (even n, area/diameter)");
  optimize_cmd->add_option("--seed", optimize_args.seed);
  optimize_cmd->add_option("--starts", optimize_args.starts);
  optimize_cmd->add_option("--max-iterations", optimize_args.max_iterations);
  optimize_cmd->add_option("--threads", optimize_args.threads, "0 = all cores");
  optimize_cmd->add_option("--max-n", optimize_args.max_n);
  optimize_cmd->add_flag("--progress", optimize_args.progress, "Emit progress,<start>,<value> lines on stderr");
  optimize_cmd->add_option("--out", optimize_args.out, "Document file, - for stdout");

  RenderArgs render_args;
  auto* render_cmd = app.add_subcommand("render", "Render a document to SVG");
  render_cmd->add_option("document", render_args.path)->required();
  render_cmd->add_option("--out", render_args.out, "SVG file, - for stdout");
  render_cmd->add_option("--canvas", render_args.options.canvas, "Canvas size in pixels");
  render_cmd->add_option("--stroke", render_args.options.stroke, "Stroke width in pixels");
  render_cmd->add_flag("--no-arcs", render_args.no_arcs, "Omit Reuleaux arcs");
  render_cmd->add_flag("--chords", render_args.options.show_diameter_graph, "Draw the diameter graph");
  render_cmd->add_option("--chord-tol", render_args.options.diameter_tol, "Diameter graph tolerance");
  render_cmd->add_flag("--labels", render_args.options.labels, "Label vertices");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check a document against all bounds");
  verify_cmd->add_option("document", verify_args.path)->required();
  verify_cmd->add_option("--format", verify_args.format)->check(CLI::IsMember({"csv", "json"}));
  verify_cmd->add_option("--out", verify_args.out, "Report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInvalidArgument;
  }

  try {
    if (bounds_cmd->parsed()) return cmd_bounds(bounds_args, out);
    if (construct_cmd->parsed()) return cmd_construct(construct_args, out, err);
    if (enumerate_cmd->parsed()) return cmd_enumerate(enumerate_args, out, err);
    if (optimize_cmd->parsed()) return cmd_optimize(optimize_args, out, err);
    if (render_cmd->parsed()) return cmd_render(render_args, out, err);
    if (verify_cmd->parsed()) return cmd_verify(verify_args, out, err);
  } catch (const InvalidSignature& e) {
    err << "error: invalid signature: " << e.what() << "\n";
    return kInvalidSignature;
  } catch (const ConstructionDegenerate& e) {
    err << "error: invalid signature: " << e.what() << "\n";
    return kInvalidSignature;
  } catch (const CapExceeded& e) {
    err << "error: cap exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const Infeasible& e) {
    err << "error: infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const MalformedDocument& e) {
    err << "error: malformed document: " << e.what() << "\n";
    return kMalformedDocument;
  } catch (const InvalidPolygon& e) {
    err << "error: invalid polygon: " << e.what() << "\n";
    return kInvalidArgument;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidArgument;
  }
  return kInvalidArgument;
}

}  // namespace extremal::cli

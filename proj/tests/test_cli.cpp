#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "extremal/commands.hpp"
#include "extremal/document.hpp"
#include "extremal/geometry.hpp"

namespace fs = std::filesystem;
using namespace extremal;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "extremal");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("extremal_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string field(const std::string& csv_line, std::size_t k) {
  std::istringstream in(csv_line);
  std::string f;
  for (std::size_t i = 0; i <= k; ++i) std::getline(in, f, ',');
  return f;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bounds") {
  const Run six = invoke({"bounds", "--n", "6", "--d", "1", "--format", "csv"});
  REQUIRE(six.code == 0);
  bool found = false;
  for (const auto& l : lines(six.out)) {
    if (field(l, 0) == "ReinhardtPerimeterDiameter") {
      found = true;
      CHECK(std::stod(field(l, 5)) == doctest::Approx(12 * std::sin(M_PI / 12)).epsilon(1e-15));
      CHECK(field(l, 6) == "yes");
    }
  }
  CHECK(found);

  const Run four = invoke({"bounds", "--n", "4", "--d", "1", "--format", "csv"});
  for (const auto& l : lines(four.out)) {
    const std::string id = field(l, 0);
    if (id == "ReinhardtPerimeterDiameter" || id == "GashkovWidthDiameter" || id == "GashkovPerimeterWidth") {
      CHECK(field(l, 6) == "no");
    }
  }

  const Run three = invoke({"bounds", "--n", "3", "--w", "1", "--format", "csv"});
  for (const auto& l : lines(three.out)) {
    if (field(l, 0) == "PalAreaWidth") CHECK(std::stod(field(l, 5)) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
  }

  CHECK(invoke({"bounds", "--n", "6"}).out.find("ReinhardtAreaDiameter") != std::string::npos);
  CHECK(invoke({"bounds", "--n", "6", "--format", "json"}).out.front() == '[');
  CHECK(invoke({"bounds", "--n", "2"}).code == 2);
  CHECK(invoke({"bounds", "--n", "5", "--d", "-1"}).code == 2);
  CHECK(invoke({"bounds"}).code == 2);
}

TEST_CASE("construct") {
  const fs::path dir = scratch("construct");
  const Run r = invoke({"construct", "reinhardt", "--n", "30", "--signature", "auto-regular", "--verify", "--out",
                     (dir / "r30.json").string()});
  REQUIRE(r.code == 0);
  const auto doc = io::load(slurp(dir / "r30.json"));
  CHECK(doc.kind == io::DocumentKind::Reinhardt);
  CHECK(doc.vertices.size() == 30);
  REQUIRE(doc.report.has_value());
  CHECK(doc.report->entry(bounds::InequalityId::ReinhardtPerimeterDiameter).equality);
  CHECK(doc.report->entry(bounds::InequalityId::GashkovWidthDiameter).equality);

  const Run none = invoke({"construct", "reinhardt", "--n", "4"});
  CHECK(none.code == 3);
  CHECK(none.err.find("signature") != std::string::npos);
  CHECK(invoke({"construct", "reinhardt", "--n", "8", "--signature", "3,3,2"}).code == 3);
  CHECK(invoke({"construct", "reinhardt", "--n", "7", "--signature", "1,1,1"}).code == 3);

  const Run an = invoke({"construct", "audet-ninin", "--n", "7", "--w", "1", "--out", "-"});
  REQUIRE(an.code == 0);
  const ConvexPolygon p(io::load(an.out).vertices);
  CHECK(perimeter(p) == doctest::Approx(7 * 2 / std::sqrt(3.0)).epsilon(1e-13));

  const Run reg = invoke({"construct", "regular", "--n", "5", "--d", "1", "--out", "-"});
  REQUIRE(reg.code == 0);
  CHECK(metrics(ConvexPolygon(io::load(reg.out).vertices)).diameter == doctest::Approx(1).epsilon(1e-14));

  const Run rl = invoke({"construct", "reuleaux", "--n", "9", "--signature", "3 3 3", "--out", "-"});
  REQUIRE(rl.code == 0);
  CHECK(io::load(rl.out).vertices.size() == 3);

  CHECK(invoke({"construct", "banana", "--n", "5"}).code == 2);
  CHECK(invoke({"construct", "audet-ninin", "--n", "6"}).code == 2);
}

TEST_CASE("enumerate") {
  const Run four = invoke({"enumerate", "--n", "4", "--census"});
  REQUIRE(four.code == 0);
  CHECK(lines(four.out) == std::vector<std::string>{"n,periodic,sporadic", "4,0,0"});
  CHECK(lines(invoke({"enumerate", "--n", "3", "--census"}).out).back() == "3,1,0");
  const auto thirty = lines(invoke({"enumerate", "--n", "30", "--census"}).out);
  CHECK(std::stoi(field(thirty.back(), 2)) >= 1);

  const Run list = invoke({"enumerate", "--n", "9"});
  REQUIRE(list.code == 0);
  CHECK(lines(list.out).front() == "n,m,signature,class,k");
  CHECK(list.out.find("9,3,3 3 3,periodic,3") != std::string::npos);
  CHECK(invoke({"enumerate", "--n", "30", "--mode", "numeric"}).out == invoke({"enumerate", "--n", "30"}).out);
  CHECK(invoke({"enumerate", "--n", "200"}).code == 4);
  CHECK(invoke({"enumerate", "--n", "60", "--mode", "numeric"}).code == 4);
}

TEST_CASE("optimize") {
  const fs::path dir = scratch("optimize");
  const Run four = invoke({"optimize", "--objective", "area", "--constraint", "diameter=1", "--n", "4", "--starts", "16",
                        "--out", (dir / "q.json").string()});
  REQUIRE(four.code == 0);
  const auto rows = lines(four.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "objective,constraint,n,value,bound,gap,starts,seed,converged");
  CHECK(std::abs(std::stod(field(rows[1], 3)) - 0.5) <= 1e-6);
  const auto doc = io::load(slurp(dir / "q.json"));
  CHECK(doc.kind == io::DocumentKind::Optimized);
  REQUIRE(doc.optimization.has_value());
  CHECK(doc.optimization->n == 4);

  const Run graham = invoke({"optimize", "--objective", "area", "--constraint", "diameter=1", "--n", "6", "--graham",
                          "--starts", "16"});
  REQUIRE(graham.code == 0);
  const double g = std::stod(field(lines(graham.out)[1], 3));
  CHECK(g > 0.649519);
  CHECK(g == doctest::Approx(0.6750).epsilon(1e-3));

  const Run tri = invoke({"optimize", "--objective", "perimeter", "--constraint", "diameter=1", "--n", "3"});
  CHECK(std::abs(std::stod(field(lines(tri.out)[1], 3)) - 3) <= 1e-6);

  const Run progress = invoke({"optimize", "--objective", "area", "--constraint", "diameter=1", "--n", "5",
                            "--starts", "4", "--progress"});
  CHECK(lines(progress.err).size() == 4);
  CHECK(lines(progress.err)[0].rfind("progress,0,", 0) == 0);

  CHECK(invoke({"optimize", "--objective", "area", "--constraint", "area=1", "--n", "4"}).code == 2);
  CHECK(invoke({"optimize", "--objective", "area", "--constraint", "diameter", "--n", "4"}).code == 2);
  CHECK(invoke({"optimize", "--objective", "area", "--constraint", "diameter=1", "--n", "40"}).code == 2);
  CHECK(invoke({"optimize", "--objective", "area", "--constraint", "diameter=1", "--n", "7", "--graham"}).code == 2);
}

TEST_CASE("verify and render") {
  const fs::path dir = scratch("verify");
  REQUIRE(invoke({"construct", "reinhardt", "--n", "15", "--out", (dir / "r15.json").string()}).code == 0);
  const Run ok = invoke({"verify", (dir / "r15.json").string()});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("ReinhardtPerimeterDiameter,") != std::string::npos);
  CHECK(ok.out.find(",true\n") != std::string::npos);
  CHECK(invoke({"verify", (dir / "r15.json").string(), "--format", "json"}).out.find("\"entries\"") !=
        std::string::npos);

  REQUIRE(invoke({"construct", "regular", "--n", "5", "--d", "1", "--out", (dir / "p5.json").string()}).code == 0);
  const Run pent = invoke({"verify", (dir / "p5.json").string()});
  CHECK(pent.code == 0);
  for (const auto& l : lines(pent.out)) {
    if (field(l, 0) == "ReinhardtAreaDiameter") CHECK(field(l, 4) == "true");
  }

  // Push one vertex inward so the polygon is no longer convex.
  auto doc = io::load(slurp(dir / "r15.json"));
  doc.vertices[3] = 0.2 * doc.vertices[3] + 0.4 * (doc.vertices[2] + doc.vertices[4]) - 0.3 * doc.vertices[3];
  spit(dir / "bad.json", io::save(doc));
  const Run bad = invoke({"verify", (dir / "bad.json").string()});
  CHECK(bad.code == 7);
  CHECK_FALSE(bad.err.empty());

  spit(dir / "junk.json", "{\"schema_version\": 1");
  CHECK(invoke({"verify", (dir / "junk.json").string()}).code == 6);
  CHECK(invoke({"verify", (dir / "missing.json").string()}).code == 6);
  CHECK(invoke({"render", (dir / "junk.json").string()}).code == 6);

  const Run svg = invoke({"render", (dir / "r15.json").string(), "--out", "-"});
  REQUIRE(svg.code == 0);
  CHECK(svg.out.rfind("<svg", 0) == 0);
  CHECK(invoke({"render", (dir / "r15.json").string(), "--canvas", "0", "--out", "-"}).code == 2);
}

TEST_CASE("output directory from the environment") {
  const fs::path dir = scratch("env");
  ::setenv(cli::kOutDirEnv, dir.c_str(), 1);
  const Run r = invoke({"construct", "regular", "--n", "6", "--side", "1"});
  const Run o = invoke({"optimize", "--objective", "area", "--constraint", "diameter=1", "--n", "3", "--starts", "2"});
  ::unsetenv(cli::kOutDirEnv);
  CHECK(r.code == 0);
  CHECK(o.code == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.path().extension() == ".json";
  CHECK(files == 2);
}

TEST_CASE("identical commands give identical bytes") {
  const fs::path dir = scratch("determinism");
  const std::vector<std::vector<std::string>> commands = {
      {"construct", "reinhardt", "--n", "21", "--verify"},
      {"optimize", "--objective", "area", "--constraint", "diameter=1", "--n", "5", "--starts", "6", "--seed", "9"},
  };
  for (const auto& cmd : commands) {
    auto a = cmd, b = cmd;
    a.insert(a.end(), {"--out", (dir / "a.json").string()});
    b.insert(b.end(), {"--out", (dir / "b.json").string()});
    REQUIRE(invoke(a).code == 0);
    REQUIRE(invoke(b).code == 0);
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    const Run s1 = invoke({"render", (dir / "a.json").string(), "--chords", "--labels", "--out", "-"});
    const Run s2 = invoke({"render", (dir / "b.json").string(), "--chords", "--labels", "--out", "-"});
    CHECK(s1.out == s2.out);
  }
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"bounds", "--n", "x"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

}  // TEST_SUITE

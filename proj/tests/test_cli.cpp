#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "suite.hpp"
#include "webtrace/annulus.hpp"
#include "webtrace/io.hpp"

using namespace webtrace;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(WEBTRACE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Strip the wall-clock line so text outputs compare deterministically.
std::string without_wall(const std::string& s) {
  std::string out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("wall_ms:", 0) != 0) out += line + "\n";
  return out;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / "webtrace_cli_test";
    std::filesystem::create_directories(path);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

const TempDir& dir() {
  static TempDir d;
  return d;
}

std::string write_doc(const std::string& name, const GraphDocument& doc) {
  std::string p = dir().file(name);
  save_graph_document(doc, p);
  return p;
}

std::string cycle4_path() {
  static std::string p = [] {
    GraphDocument d;
    d.n = 3;
    d.graph = suite::make_cycle(2);
    return write_doc("cycle4.json", d);
  }();
  return p;
}

std::string annulus12_path() {
  static std::string p = [] {
    GraphDocument d;
    d.n = 3;
    d.graph = build_annulus_grid(1, 2).graph;
    return write_doc("annulus12.json", d);
  }();
  return p;
}

std::string theta_pants_path() {
  static std::string p = [] {
    GraphDocument d;
    d.n = 3;
    d.graph = suite::make_theta();
    const FaceData& fd = d.graph.faces();
    d.graph.surface.kind = SurfaceKind::Pants;
    d.graph.surface.punctured_faces = {fd.faces[0].id, fd.faces[1].id,
                                       fd.faces[2].id};
    d.graph.surface.seams = {{2}, {3}};
    d.graph.invalidate_caches();
    d.graph.validate();
    return write_doc("theta_pants.json", d);
  }();
  return p;
}

std::string box_multiweb_path() {
  static std::string p = [] {
    AnnulusGrid ag = build_annulus_grid(1, 2);
    Multiweb m;
    m.rank = 3;
    m.mult = {{ag.h_edge(0, 0), 1},
              {ag.h_edge(1, 0), 1},
              {ag.v_edge(0, 0), 2},
              {ag.v_edge(0, 1), 2}};
    std::string path = dir().file("box.json");
    std::ofstream out(path);
    out << serialize_multiweb(m);
    return path;
  }();
  return p;
}

}  // namespace

TEST_CASE("verify: 4-cycle at n=3 under the identity") {
  auto r = run_cli("verify --graph " + cycle4_path() + " --n 3");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("det: -8") != std::string::npos);
  CHECK(r.output.find("trace_sum: 8") != std::string::npos);
  CHECK(r.output.find("match: true") != std::string::npos);
}

TEST_CASE("verify: seeded runs are deterministic and machine-parsable") {
  std::string args = "verify --graph " + cycle4_path() +
                     " --n 2 --connection random:7 --format machine";
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  nlohmann::json j = nlohmann::json::parse(a.output);
  CHECK(j.at("command") == "verify");
  CHECK(j.at("match") == true);
  CHECK(j.at("det").at("exact").is_string());
  CHECK(j.at("det").at("decimal").is_number());
}

TEST_CASE("verify: malformed input exits 2") {
  std::string bad = dir().file("bad.json");
  std::ofstream(bad) << "{\"n\": 1, \"vertices\": oops";
  auto r = run_cli("verify --graph " + bad);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("parse error") != std::string::npos);

  auto missing = run_cli("verify --graph " + dir().file("absent.json"));
  CHECK(missing.exit_code == 2);

  auto noflag = run_cli("verify");
  CHECK(noflag.exit_code == 2);
}

TEST_CASE("annulus: pgf and means for the smallest grid") {
  auto pgf = run_cli("annulus --m 1 --height 2 --what pgf");
  CHECK(pgf.exit_code == 0);
  CHECK(pgf.output.find("(0,0): 4/25") != std::string::npos);
  CHECK(pgf.output.find("(1,1): 27/125") != std::string::npos);

  auto means = run_cli("annulus --m 1 --height 2 --what means");
  CHECK(means.exit_code == 0);
  CHECK(means.output.find("3/5") != std::string::npos);
  CHECK(means.output.find("0.6") != std::string::npos);

  auto even = run_cli("annulus --m 2 --height 2 --what detz");
  CHECK(even.exit_code == 2);
}

TEST_CASE("annulus: exponent table agrees everywhere") {
  auto r = run_cli("annulus --m 1 --height 2 --what exponents --format machine");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  REQUIRE(j.at("exponents").size() == 49);
  for (const auto& row : j.at("exponents")) CHECK(row.at("agree") == true);
}

TEST_CASE("skein: contractible chain reduces to three empty webs") {
  auto r = run_cli("skein --graph " + annulus12_path() + " --multiweb " +
                   box_multiweb_path());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("(0,0): 3") != std::string::npos);

  // pants-marked graphs are not supported by the reducer
  auto unsupported = run_cli("skein --graph " + theta_pants_path() +
                             " --multiweb " + box_multiweb_path());
  CHECK(unsupported.exit_code == 4);
}

TEST_CASE("pants: theta coefficients and surface guard") {
  auto r = run_cli("pants --graph " + theta_pants_path());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Z0: 21") != std::string::npos);
  CHECK(r.output.find("Z1: 1") != std::string::npos);
  CHECK(r.output.find("check: 27") != std::string::npos);

  auto disk = run_cli("pants --graph " + cycle4_path());
  CHECK(disk.exit_code == 4);
}

TEST_CASE("sample: deterministic and independent of the worker count") {
  std::string base = "sample --graph " + cycle4_path() +
                     " --n 3 --count 400 --seed 1 --format machine";
  auto a = run_cli(base + " --jobs 1");
  auto b = run_cli(base + " --jobs 4");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  nlohmann::json j = nlohmann::json::parse(a.output);
  long total = 0;
  for (const auto& row : j.at("samples")) total += row.at("count").get<long>();
  CHECK(total == 400);
}

TEST_CASE("text reports are deterministic apart from the wall clock") {
  std::string args = "verify --graph " + cycle4_path() + " --n 3";
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(without_wall(a.output) == without_wall(b.output));
}

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "../vendor/json.hpp"
#include "vtg/families.hpp"
#include "vtg/graph.hpp"

using namespace vtg;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "vtg_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the installed binary with stdout/stderr captured to files, so tests
// can assert on exit codes and exact output bytes.
CliRun run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out = work_dir() / ("stdout." + std::to_string(counter));
  fs::path err = work_dir() / ("stderr." + std::to_string(counter));
  ++counter;
  std::string cmd = std::string(VTG_CLI_PATH) + " " + args + " > " +
                    out.string() + " 2> " + err.string();
  int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// The last stdout line of every successful command is a one-line run report.
json last_json_line(const std::string& out) {
  size_t end = out.find_last_not_of('\n');
  REQUIRE(end != std::string::npos);
  size_t start = out.rfind('\n', end);
  start = (start == std::string::npos) ? 0 : start + 1;
  return json::parse(out.substr(start, end - start + 1));
}

}  // namespace

TEST_CASE("cli build writes a graph file that round-trips") {
  fs::path vtg_path = work_dir() / "c12.vtg";
  CliRun r = run_cli("build --family cyclic --n 12 --out " + vtg_path.string());
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "vertices 12 edges 12"));

  json rep = last_json_line(r.out);
  CHECK(rep["command"] == "build");
  CHECK(rep["exit_status"] == 0);
  REQUIRE(rep["outputs"].size() == 1);
  CHECK(rep["outputs"][0] == vtg_path.string());

  LabeledGraph from_file = read_vtg(vtg_path.string());
  LabeledGraph direct = build_family(FamilySpec::parse("cyclic"), 12).graph;
  CHECK(graphs_equal(from_file, direct));
}

TEST_CASE("cli build heisenberg has cubic vertex count") {
  fs::path vtg_path = work_dir() / "h4.vtg";
  CliRun r = run_cli("build --family heisenberg --n 4 --out " + vtg_path.string());
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "vertices 64 "));
  CHECK(read_vtg(vtg_path.string()).n == 64);
}

TEST_CASE("cli analyze reports cycle diagnostics") {
  fs::path out = work_dir() / "c100.json";
  CliRun r = run_cli("analyze --family cyclic --n 100 --out " + out.string());
  REQUIRE(r.code == 0);

  json bundle = json::parse(slurp(out));
  CHECK(bundle["vertices"] == 100);
  CHECK(bundle["edges"] == 100);
  CHECK(bundle["diameter"] == 50);
  CHECK(bundle["growth"]["counts"][0] == 1);
  CHECK(bundle["growth"]["counts"][1] == 3);
  CHECK(bundle["growth"]["stabilized"] == true);
  // A cycle has no branching, so the deepest caret branch is empty.
  CHECK(bundle["caret"]["branch_length"] == 0);
  CHECK(bundle["line_defect"]["defect"] == 0);
  CHECK(bundle["doubling"].contains("K"));
}

TEST_CASE("cli analyze accepts a graph file but not both sources") {
  fs::path vtg_path = work_dir() / "c12_again.vtg";
  REQUIRE(run_cli("build --family cyclic --n 12 --out " + vtg_path.string()).code == 0);

  CliRun ok = run_cli("analyze " + vtg_path.string());
  REQUIRE(ok.code == 0);
  CHECK(contains(ok.out, "\"diameter\": 6"));

  CliRun both = run_cli("analyze " + vtg_path.string() + " --family cyclic --n 12");
  CHECK(both.code == 1);
  CHECK(contains(both.err, "not both"));

  CliRun neither = run_cli("analyze");
  CHECK(neither.code == 1);
  CHECK(contains(neither.err, "analyze needs"));
}

TEST_CASE("cli certify passes cyclic graphs against the circle model") {
  CliRun r = run_cli("certify --family cyclic --model circle --n 50,100 --tol 0.1");
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "n,size,diameter,max_error,gh_upper"));
  CHECK(contains(r.out, "50,50,25,"));
  CHECK(contains(r.out, "100,100,50,"));
  CHECK(contains(r.out, "PASS final_upper=0.02 tol=0.1"));
  CHECK(last_json_line(r.out)["command"] == "certify");
}

TEST_CASE("cli certify fails with exit 2 when the family does not converge") {
  CliRun r = run_cli(
      "certify --family random-3-regular --model circle --n 16,24 --tol 0.1");
  CHECK(r.code == 2);
  CHECK(contains(r.out, "FAIL"));
}

TEST_CASE("cli certify rejects mismatched models") {
  CliRun wrong_kind = run_cli("certify --family cyclic --model l1-torus-2 --n 12");
  CHECK(wrong_kind.code == 1);
  CHECK(contains(wrong_kind.err, "torus"));

  CliRun no_model = run_cli("certify --family dihedral --model circle --n 10");
  CHECK(no_model.code == 1);
  CHECK(contains(no_model.err, "does not converge"));

  CliRun wrong_rank = run_cli("certify --family torus-2 --model l1-torus-3 --n 4");
  CHECK(wrong_rank.code == 1);
  CHECK(contains(wrong_rank.err, "rank"));

  CliRun unknown = run_cli("certify --family cyclic --model moebius --n 12");
  CHECK(unknown.code == 1);
  CHECK(contains(unknown.err, "unknown model"));
}

TEST_CASE("cli rejects bad input with exit 1") {
  CliRun bad_family = run_cli("build --family nope --n 3 --out " +
                              (work_dir() / "nope.vtg").string());
  CHECK(bad_family.code == 1);
  CHECK(contains(bad_family.err, "unknown family"));

  CliRun missing_flag = run_cli("build --family cyclic");
  CHECK(missing_flag.code == 1);

  CliRun no_subcommand = run_cli("");
  CHECK(no_subcommand.code == 1);

  CliRun missing_file = run_cli("analyze " + (work_dir() / "absent.vtg").string());
  CHECK(missing_file.code == 1);
}

TEST_CASE("cli output is byte-identical for a fixed seed") {
  std::string args = "analyze --family random-3-regular --n 16 --seed 7";
  CliRun a = run_cli(args);
  CliRun b = run_cli(args);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);

  CliRun c = run_cli("analyze --family random-3-regular --n 16 --seed 8");
  REQUIRE(c.code == 0);
  // A different seed rewires the random graph, which the report reflects.
  CHECK(a.out != c.out);
}

TEST_CASE("cli build honors a generator override") {
  fs::path vtg_path = work_dir() / "c12_wide.vtg";
  CliRun r = run_cli("build --family cyclic --n 12 --gens '1;3' --out " +
                     vtg_path.string());
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "vertices 12 edges 24"));
}

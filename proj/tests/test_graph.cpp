#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "vtg/graph.hpp"

using namespace vtg;

namespace {

LabeledGraph path3() {
  LabeledGraph g;
  g.n = 3;
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.finalize();
  return g;
}

}  // namespace

TEST_CASE("graph construction normalizes edges") {
  LabeledGraph g;
  g.n = 4;
  g.add_edge(2, 1);   // stored as (1, 2)
  g.add_edge(1, 2);   // duplicate collapses
  g.add_edge(3, 3);   // self-loop dropped
  g.add_edge(0, 1);
  g.finalize();
  CHECK(g.edges.size() == 2);
  CHECK(g.edges[0] == std::make_pair(0, 1));
  CHECK(g.edges[1] == std::make_pair(1, 2));
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(3) == 0);
  CHECK_FALSE(g.regular());
  CHECK_FALSE(g.connected());
}

TEST_CASE("adjacency lists come out sorted") {
  LabeledGraph g;
  g.n = 5;
  g.add_edge(0, 4);
  g.add_edge(0, 2);
  g.add_edge(0, 1);
  g.finalize();
  CHECK(g.adj[0] == std::vector<int>{1, 2, 4});
}

TEST_CASE("finalize rejects out-of-range endpoints") {
  LabeledGraph g;
  g.n = 2;
  g.add_edge(0, 5);
  CHECK_THROWS_AS(g.finalize(), VtgError);
}

TEST_CASE("connectivity and regularity flags") {
  LabeledGraph c4;
  c4.n = 4;
  c4.add_edge(0, 1);
  c4.add_edge(1, 2);
  c4.add_edge(2, 3);
  c4.add_edge(0, 3);
  c4.finalize();
  CHECK(c4.connected());
  CHECK(c4.regular());
  CHECK(path3().connected());
  CHECK_FALSE(path3().regular());
}

TEST_CASE("vtg text round-trips verbatim") {
  LabeledGraph g = path3();
  g.labels = {"a", "", "c"};
  g.declared_transitive = true;
  std::stringstream ss;
  write_vtg(g, ss);
  LabeledGraph back = read_vtg(ss);
  CHECK(graphs_equal(g, back));
}

TEST_CASE("vtg text format is stable") {
  LabeledGraph g = path3();
  std::stringstream ss;
  write_vtg(g, ss);
  CHECK(ss.str() == "vtg 1 3\ne 0 1\ne 1 2\n");
}

TEST_CASE("vtg parser rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::stringstream ss(text);
    return read_vtg(ss);
  };
  CHECK_THROWS_AS(parse(""), VtgError);
  CHECK_THROWS_AS(parse("vtg 2 3\n"), VtgError);        // unknown version
  CHECK_THROWS_AS(parse("vtg 1 3\ne 1 0\n"), VtgError);  // needs u < v
  CHECK_THROWS_AS(parse("vtg 1 3\ne 0 9\n"), VtgError);  // out of range
  CHECK_THROWS_AS(parse("vtg 1 3\nq 0 1\n"), VtgError);  // unknown record
  CHECK(parse("vtg 1 3\n# transitive\ne 0 1\n").declared_transitive);
}

TEST_CASE("vtg file round-trip through a path") {
  LabeledGraph g = path3();
  std::string path = "roundtrip_tmp.vtg";
  write_vtg(g, path);
  LabeledGraph back = read_vtg(path);
  CHECK(graphs_equal(g, back));
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_vtg(std::string("missing_file.vtg")), VtgError);
}

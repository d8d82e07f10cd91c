#include <catch2/catch_amalgamated.hpp>

#include "vtg/cayley.hpp"
#include "vtg/metric.hpp"

using namespace vtg;

namespace {

LabeledGraph cycle_graph(int n) {
  LabeledGraph g;
  g.n = n;
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  g.finalize();
  return g;
}

LabeledGraph path_graph(int n) {
  LabeledGraph g;
  g.n = n;
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  g.finalize();
  return g;
}

}  // namespace

TEST_CASE("bfs distance fields on a cycle") {
  LabeledGraph g = cycle_graph(6);
  DistanceField f = bfs(g, 0);
  CHECK(f.dist == std::vector<int>{0, 1, 2, 3, 2, 1});
  CHECK(f.ecc == 3);
  CHECK(f.complete);
}

TEST_CASE("bfs reports unreachable vertices") {
  LabeledGraph g;
  g.n = 4;
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.finalize();
  DistanceField f = bfs(g, 0);
  CHECK_FALSE(f.complete);
  CHECK(f.dist[2] == -1);
  CHECK(f.ecc == 1);
}

TEST_CASE("lexicographic shortest path trees") {
  LabeledGraph g = cycle_graph(6);
  DistanceField f = bfs(g, 0);
  std::vector<int> parent = lex_parents(g, f);
  CHECK(parent[3] == 2);  // ties break toward the smaller neighbor id
  CHECK(parent[0] == -1);
  CHECK(path_to_source(parent, 3) == std::vector<int>{3, 2, 1, 0});
}

TEST_CASE("diameter uses one source on transitive graphs and all otherwise") {
  LabeledGraph c = cycle_graph(12);
  CHECK(diameter(c) == 6);
  CHECK(diameter_all_sources(c) == 6);

  LabeledGraph p = path_graph(5);
  CHECK(diameter(p) == 4);
  CHECK(diameter_all_sources(p) == 4);

  LabeledGraph d;
  d.n = 2;
  d.finalize();
  CHECK_THROWS_AS(diameter(d), VtgError);
}

TEST_CASE("growth profiles count cumulative ball sizes") {
  LabeledGraph g = cycle_graph(12);
  GrowthProfile p = growth_profile(g, 0);
  CHECK(p.counts == std::vector<double>{1, 3, 5, 7, 9, 11, 12});
  CHECK(p.stabilized);
  CHECK(p.r_max() == 6);
  CHECK(p.ball(4) == 9.0);
  CHECK(p.ball(100) == 12.0);  // stabilized profiles pad with the total
  CHECK(p.can_query(1000));
  CHECK_THROWS_AS(p.ball(-1), VtgError);
}

TEST_CASE("growth exponent separates lines from planes") {
  LabeledGraph line = cycle_graph(100);
  double fit1 = growth_exponent_fit(growth_profile(line, 0));
  CHECK(fit1 > 0.6);
  CHECK(fit1 < 1.1);

  Group z10sq(GroupSpec::cyclic_power(10, 2));
  CayleyBuild torus = build_cayley(z10sq, make_genset(z10sq, {{1, 0}, {0, 1}}));
  double fit2 = growth_exponent_fit(growth_profile(torus.graph, 0));
  CHECK(fit2 > 1.3);
  CHECK(fit2 < 2.2);
  CHECK(fit2 > fit1);

  LabeledGraph tiny = path_graph(2);
  CHECK_THROWS_AS(growth_exponent_fit(growth_profile(tiny, 0)), VtgError);
}

TEST_CASE("doubling ratios on a long cycle") {
  LabeledGraph g = cycle_graph(1000);
  GrowthProfile p = growth_profile(g, 0);
  DoublingReport rep = doubling_report(p, 1, 100);
  CHECK(rep.K == 10000.0);
  CHECK(rep.witness_radius == 1);
  REQUIRE_FALSE(rep.ratios.empty());
  CHECK(rep.ratios[0].first == 1);
  CHECK(rep.ratios[0].second == Catch::Approx(201.0 / 3.0));
  for (auto& [r, ratio] : rep.ratios) CHECK(ratio <= rep.K);
  CHECK_THROWS_AS(doubling_report(p, 0, 100), VtgError);
  CHECK_THROWS_AS(doubling_report(p, 1, 1), VtgError);
}

TEST_CASE("matrix-backed metric spaces validate their axioms") {
  FiniteMetricSpace m = FiniteMetricSpace::from_matrix({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK(m.size() == 3);
  CHECK(m.dist(0, 2) == 2.0);
  CHECK(m.diameter() == 2.0);
  CHECK(m.check_axioms());
  CHECK_FALSE(m.graph_backed());

  // asymmetric
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({{0, 1}, {2, 0}}), VtgError);
  // triangle inequality violated
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}),
                  VtgError);
  // distinct points at distance zero
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({{0, 0}, {0, 0}}), VtgError);
}

TEST_CASE("graph-backed metric spaces rescale hop distances") {
  FiniteMetricSpace s = FiniteMetricSpace::from_graph(cycle_graph(12), 6.0);
  CHECK(s.size() == 12);
  CHECK(s.graph_backed());
  CHECK(s.dist(0, 6) == 1.0);
  CHECK(s.hop_dist(0, 6) == 6);
  CHECK(s.diameter() == 1.0);
  CHECK(s.check_axioms());
  std::vector<int> b = s.ball_indices(0, 1.0 / 6.0);
  CHECK(b == std::vector<int>{0, 1, 11});

  LabeledGraph disc;
  disc.n = 3;
  disc.add_edge(0, 1);
  disc.finalize();
  CHECK_THROWS_AS(FiniteMetricSpace::from_graph(disc, 1.0), VtgError);
  CHECK_THROWS_AS(FiniteMetricSpace::from_graph(cycle_graph(4), 0.0), VtgError);
}

TEST_CASE("covering and packing bounds on a rescaled circle") {
  FiniteMetricSpace s = FiniteMetricSpace::from_graph(cycle_graph(100), 100.0);
  CoveringReport rep = covering_number(s, 0.1);
  CHECK(rep.greedy_upper == 5);
  CHECK(rep.packing_lower == 4);
  CHECK(rep.packing_lower <= rep.greedy_upper);

  // every vertex lies within eps of a greedy center
  for (int v = 0; v < s.size(); ++v) {
    bool covered = false;
    for (int c : rep.greedy_centers)
      if (s.dist(c, v) <= 0.1 + 1e-12) covered = true;
    CHECK(covered);
  }
  // packing points are pairwise farther than 2 eps
  for (size_t i = 0; i < rep.packing_points.size(); ++i)
    for (size_t j = i + 1; j < rep.packing_points.size(); ++j)
      CHECK(s.dist(rep.packing_points[i], rep.packing_points[j]) > 0.2);

  CHECK_THROWS_AS(covering_number(s, 0.0), VtgError);
}

TEST_CASE("radius of freedom finds the first lattice collision") {
  Group z10(GroupSpec::cyclic_power(10, 1));
  RadiusOfFreedomReport rep = radius_of_freedom(z10, {{1}, {3}});
  CHECK(rep.r_f == 1);
  CHECK(rep.relation_weight == 4);
  CHECK(rep.relation_weight <= 2 * (rep.r_f + 1));
  // the witness really is a relation: sum n_i g_i = 0 in the group
  i64 image = rep.relation[0] * 1 + rep.relation[1] * 3;
  CHECK(((image % 10) + 10) % 10 == 0);

  Group z100(GroupSpec::cyclic_power(100, 1));
  RadiusOfFreedomReport line = radius_of_freedom(z100, {{1}});
  CHECK(line.r_f == 49);
  CHECK(line.relation_weight == 100);

  Group h(GroupSpec::heisenberg(3));
  CHECK_THROWS_AS(radius_of_freedom(h, {{1, 0, 0}}), VtgError);
}

TEST_CASE("weighted word lengths sandwich plain word lengths") {
  Group d20(GroupSpec::dihedral(20));
  GenSet u = make_genset(d20, {{1, 0}, {0, 1}});
  WeightedWordReport rep = weighted_word_length(d20, u, {{1, 0}});
  CHECK(rep.holds);
  CHECK(rep.index == 2);
  CHECK(rep.a0_size == 20);
  CHECK(rep.max_slack == 0);  // rotations take no shortcuts through flips
  CHECK(rep.max_slack <= rep.slack_bound);

  // the rotation subgroup is normal, the flip subgroup is not
  CHECK_THROWS_AS(weighted_word_length(d20, u, {{0, 1}}), VtgError);
}

TEST_CASE("weighted word lengths reject non-abelian subgroups") {
  Group d6(GroupSpec::dihedral(6));
  GenSet u = make_genset(d6, {{1, 0}, {0, 1}});
  CHECK_THROWS_AS(weighted_word_length(d6, u, {{1, 0}, {0, 1}}), VtgError);
}

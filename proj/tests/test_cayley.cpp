#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "vtg/cayley.hpp"

using namespace vtg;

TEST_CASE("generating sets symmetrize and drop the identity") {
  Group z6(GroupSpec::cyclic_power(6, 1));
  GenSet s = make_genset(z6, {{1}});
  REQUIRE(s.gens.size() == 2);  // +1 and its inverse
  CHECK(s.symmetrized);
  CHECK(set_contains(subgroup_closure(z6, s.gens), {5}));

  GenSet t = make_genset(z6, {{0}, {2}, {4}});
  CHECK(t.identity_dropped);
  CHECK(t.gens.size() == 2);  // {2, 4}, already closed under inverse

  GenSet self_inv = make_genset(z6, {{3}});
  CHECK(self_inv.gens.size() == 1);  // 3 is its own inverse
  CHECK_FALSE(self_inv.symmetrized);
}

TEST_CASE("cyclic cayley graph is a cycle") {
  Group z6(GroupSpec::cyclic_power(6, 1));
  CayleyBuild b = build_cayley(z6, make_genset(z6, {{1}}));
  CHECK(b.graph.n == 6);
  CHECK(b.graph.edges.size() == 6);
  CHECK(b.graph.regular());
  CHECK(b.graph.degree(0) == 2);
  CHECK(b.graph.declared_transitive);
  CHECK(b.graph.connected());
  CHECK(b.vertex_elem[0] == z6.identity());
  for (int v = 0; v < b.graph.n; ++v) CHECK(b.elem_id.at(b.vertex_elem[size_t(v)]) == v);
}

TEST_CASE("dense generators give the complete graph") {
  Group z4(GroupSpec::cyclic_power(4, 1));
  CayleyBuild b = build_cayley(z4, make_genset(z4, {{1}, {2}, {3}}));
  CHECK(b.graph.n == 4);
  CHECK(b.graph.edges.size() == 6);
  CHECK(b.graph.degree(0) == 3);
}

TEST_CASE("labels carry the element coordinates") {
  Group h(GroupSpec::heisenberg(2));
  CayleyBuild b = build_cayley(h, make_genset(h, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), true);
  REQUIRE(int(b.graph.labels.size()) == b.graph.n);
  CHECK(b.graph.labels[0] == "(0,0,0)");
}

TEST_CASE("non-generating sets are rejected") {
  Group z6(GroupSpec::cyclic_power(6, 1));
  CHECK_THROWS_AS(build_cayley(z6, make_genset(z6, {{2}})), VtgError);
  GenSet empty = make_genset(z6, {{0}});  // identity gets dropped, nothing left
  CHECK(empty.gens.empty());
  CHECK_THROWS_AS(build_cayley(z6, empty), VtgError);
}

TEST_CASE("translations witness vertex transitivity") {
  Group z12(GroupSpec::cyclic_power(12, 1));
  CayleyBuild b = build_cayley(z12, make_genset(z12, {{1}, {3}}));
  CHECK(transitivity_spot_check(z12, b, 24));
}

TEST_CASE("cayley-abels build on the square's symmetries") {
  // rotation and a reflection fixing point 0: dihedral action on 4 points
  Group g(GroupSpec::permutation(4, {{1, 2, 3, 0}, {0, 3, 2, 1}}));
  CHECK(g.order() == 8);
  GenSet s = make_genset(g, {{1, 2, 3, 0}, {0, 3, 2, 1}});
  CayleyAbelsBuild cab = build_cayley_abels(g, 0, s);
  CHECK(cab.graph.n == 4);
  CHECK(cab.stabilizer.size() == 2);
  CHECK(cab.graph.connected());
  CHECK(cab.graph.degree(0) == 2);  // the coset graph is a 4-cycle
  CHECK(cab.graph.declared_transitive);

  ProjectionCheck pc = cayley_abels_projection_check(g, cab);
  CHECK(pc.balls_match);
  CHECK(pc.additive_constant <= 2.0);

  StabilizerBoundReport sb = stabilizer_bound_check(g, cab, 2, 1);
  CHECK(sb.faithful);
  CHECK(sb.pass);
  CHECK(sb.stabilizer_order == 2);
  REQUIRE(sb.prime_torsion.size() == 1);
  CHECK(sb.prime_torsion[0].first == 2);
}

TEST_CASE("cayley-abels needs a transitive action") {
  // two commuting transpositions leave {0,1} invariant
  Group g(GroupSpec::permutation(4, {{1, 0, 2, 3}, {0, 1, 3, 2}}));
  GenSet s = make_genset(g, {{1, 0, 2, 3}, {0, 1, 3, 2}});
  CHECK_THROWS_AS(build_cayley_abels(g, 0, s), VtgError);
}

TEST_CASE("finite index subgraph on a cycle") {
  Group z12(GroupSpec::cyclic_power(12, 1));
  CayleyBuild host = build_cayley(z12, make_genset(z12, {{1}}));
  std::vector<int> orbit;
  for (int v = 0; v < 12; ++v)
    if (z12.canon(host.vertex_elem[size_t(v)])[0] % 2 == 0) orbit.push_back(v);
  REQUIRE(orbit.size() == 6);
  FiniteIndexSubgraph sub = finite_index_subgraph(host.graph, orbit, 1);
  CHECK(sub.graph.n == 6);
  CHECK(sub.graph.connected());
  CHECK(sub.dense);
  CHECK(sub.max_degree <= 8);              // host degree^(2m+1) = 2^3
  CHECK(sub.qi_multiplicative <= 3.0);     // 2m + 1
  for (int v = 0; v < sub.graph.n; ++v) CHECK(sub.graph.degree(v) >= 2);
}

TEST_CASE("sparse orbits violate the density hypothesis") {
  Group z12(GroupSpec::cyclic_power(12, 1));
  CayleyBuild host = build_cayley(z12, make_genset(z12, {{1}}));
  std::vector<int> sparse{host.elem_id.at({0}), host.elem_id.at({6})};
  CHECK_THROWS_AS(finite_index_subgraph(host.graph, sparse, 1), VtgError);
}

TEST_CASE("abelianization of the nilpotent family drops the center") {
  Group h3(GroupSpec::heisenberg(3));
  GenSet s = make_genset(h3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  Abelianization ab = abelianize(h3, s);
  CHECK(ab.quotient_spec.kind == GroupKind::CyclicPower);
  CHECK(ab.quotient_spec.n == 3);
  CHECK(ab.quotient_spec.k == 2);
  Group q(ab.quotient_spec);
  CHECK(q.order() == 9);
}

TEST_CASE("abelianization of dihedral groups by enumeration") {
  Group d5(GroupSpec::dihedral(5));
  Abelianization a5 = abelianize(d5, make_genset(d5, {{1, 0}, {0, 1}}));
  CHECK(Group(a5.quotient_spec).order() == 2);

  Group d6(GroupSpec::dihedral(6));
  Abelianization a6 = abelianize(d6, make_genset(d6, {{1, 0}, {0, 1}}));
  CHECK(Group(a6.quotient_spec).order() == 4);
}

TEST_CASE("single commutators cover the derived subgroup at desk scale") {
  Group h3(GroupSpec::heisenberg(3));
  CommutatorWidthReport rep = commutator_width_check(h3, 1);
  CHECK(rep.derived_order == 3);
  CHECK(rep.covered);
  CHECK(rep.single_commutators >= rep.derived_order);

  Group d5(GroupSpec::dihedral(5));
  CommutatorWidthReport r2 = commutator_width_check(d5, 2);
  CHECK(r2.derived_order == 5);
  CHECK(r2.covered);
}

TEST_CASE("bounded words reach the whole normal closure in nilpotent groups") {
  Group h3(GroupSpec::heisenberg(3));
  GenSet s = make_genset(h3, {{1, 0, 0}, {0, 1, 0}});
  NormalClosureReport rep = normal_closure_bounded_check(h3, s, {0, 1, 0}, 2);
  CHECK(rep.nilpotency == 2);
  CHECK(rep.word_radius == 16);
  CHECK(rep.equal);
  CHECK(rep.closure_order == rep.bounded_subgroup_order);
}

TEST_CASE("normal closure check rejects non-nilpotent inputs beyond the step") {
  Group d5(GroupSpec::dihedral(5));
  GenSet s = make_genset(d5, {{1, 0}, {0, 1}});
  CHECK_THROWS_AS(normal_closure_bounded_check(d5, s, {1, 0}, 1), VtgError);
}

TEST_CASE("plain distance rows match the metric engine") {
  Group z8(GroupSpec::cyclic_power(8, 1));
  CayleyBuild b = build_cayley(z8, make_genset(z8, {{1}}));
  std::vector<int> d = bfs_dist_raw(b.graph, 0);
  int antipode = b.elem_id.at({4});  // vertices are in BFS order, look it up
  CHECK(d[antipode] == 4);
  CHECK(*std::max_element(d.begin(), d.end()) == 4);
  std::vector<int> capped = bfs_dist_raw(b.graph, 0, 2);
  CHECK(capped[antipode] == -1);  // beyond the cap stays unreached
}

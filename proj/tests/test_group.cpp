#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "vtg/group.hpp"

using namespace vtg;

TEST_CASE("cyclic powers") {
  Group z6(GroupSpec::cyclic_power(6, 1));
  CHECK(z6.order() == 6);
  CHECK(z6.mul({4}, {5}) == Elem{3});
  CHECK(z6.inv({2}) == Elem{4});
  CHECK(z6.canon({-1}) == Elem{5});
  CHECK(z6.is_identity(z6.mul({3}, {3})));

  Group z3sq(GroupSpec::cyclic_power(3, 2));
  CHECK(z3sq.order() == 9);
  CHECK(z3sq.elements().size() == 9);
  CHECK(z3sq.mul({2, 2}, {2, 1}) == Elem{1, 0});
}

TEST_CASE("abelian quotients reduce by the hermite form") {
  // columns (2,0) and (1,3): determinant 6, so Z^2 / L has 6 elements
  Group g(GroupSpec::abelian_quotient({{2, 1}, {0, 3}}));
  CHECK(g.order() == 6);
  CHECK(g.elements().size() == 6);
  for (const Elem& e : g.elements()) {
    CHECK(g.canon(e) == e);
    CHECK(g.is_identity(g.mul(e, g.inv(e))));
  }

  Group grid(GroupSpec::abelian_quotient({{4, 0}, {0, 2}}));
  CHECK(grid.order() == 8);
  CHECK(grid.mul({3, 1}, {1, 1}) == Elem{0, 0});
}

TEST_CASE("hermite normal form is upper triangular with positive diagonal") {
  auto h = hermite_normal_form({{2, 1}, {0, 3}});
  REQUIRE(h.size() == 2);
  CHECK(h[0][0] > 0);
  CHECK(h[1][1] > 0);
  CHECK(h[1][0] == 0);
  CHECK(h[0][0] * h[1][1] == 6);
  CHECK_THROWS_AS(hermite_normal_form({{1, 1}, {1, 1}}), VtgError);  // singular
}

TEST_CASE("heisenberg multiplication twists the center") {
  Group h3(GroupSpec::heisenberg(3));
  CHECK(h3.order() == 27);
  CHECK(h3.elements().size() == 27);
  CHECK(h3.mul({1, 0, 0}, {0, 1, 0}) == Elem{1, 1, 1});
  CHECK(h3.mul({0, 1, 0}, {1, 0, 0}) == Elem{1, 1, 0});  // order matters
  // x y x^-1 y^-1 is the central generator
  Elem c = h3.commutator({1, 0, 0}, {0, 1, 0});
  CHECK((c == Elem{0, 0, 1} || c == Elem{0, 0, 2}));  // a central element either way
  CHECK(c[0] == 0);
  CHECK(c[1] == 0);
  for (const Elem& e : h3.elements())
    CHECK(h3.is_identity(h3.mul(e, h3.inv(e))));
}

TEST_CASE("dihedral flips invert rotations") {
  Group d5(GroupSpec::dihedral(5));
  CHECK(d5.order() == 10);
  CHECK(d5.elements().size() == 10);
  Elem r{1, 0}, s{0, 1};
  CHECK(d5.is_identity(d5.mul(s, s)));
  CHECK(d5.mul(d5.mul(s, r), s) == d5.inv(r));
  CHECK(d5.conj(s, r) == d5.inv(r));
}

TEST_CASE("permutation groups close over their generators") {
  // a transposition and a 3-cycle generate all six permutations of 3 points
  Group s3(GroupSpec::permutation(3, {{1, 0, 2}, {1, 2, 0}}));
  CHECK(s3.order() == 6);
  Elem t{1, 0, 2}, c{1, 2, 0};
  CHECK(s3.mul(t, c) == Elem{0, 2, 1});  // apply c first, then t
  CHECK(s3.inv(c) == Elem{2, 0, 1});
  CHECK(s3.identity() == Elem{0, 1, 2});
}

TEST_CASE("subgroup closure in a cyclic group") {
  Group z12(GroupSpec::cyclic_power(12, 1));
  auto sub = subgroup_closure(z12, {{4}});
  CHECK(sub.size() == 3);
  CHECK(set_contains(sub, {8}));
  CHECK_FALSE(set_contains(sub, {2}));
}

TEST_CASE("normal closures in the dihedral group") {
  Group d5(GroupSpec::dihedral(5));
  std::vector<Elem> gens{{1, 0}, {0, 1}};
  auto rot = normal_closure(d5, gens, {{1, 0}});
  CHECK(rot.size() == 5);  // rotations form a normal subgroup
  auto all = normal_closure(d5, gens, {{0, 1}});
  CHECK(all.size() == 10);  // conjugates of a flip generate everything
}

TEST_CASE("derived subgroups") {
  Group d5(GroupSpec::dihedral(5));
  CHECK(derived_subgroup(d5).size() == 5);
  Group h4(GroupSpec::heisenberg(4));
  auto der = derived_subgroup(h4);
  CHECK(der.size() == 4);  // the center (0, 0, *)
  for (const Elem& e : der) {
    CHECK(e[0] == 0);
    CHECK(e[1] == 0);
  }
  Group z9(GroupSpec::cyclic_power(9, 1));
  CHECK(derived_subgroup(z9).size() == 1);
}

TEST_CASE("nilpotency steps") {
  Group z8(GroupSpec::cyclic_power(8, 1));
  CHECK(nilpotency_step(z8) == 1);
  Group h3(GroupSpec::heisenberg(3));
  CHECK(nilpotency_step(h3) == 2);
  Group d4(GroupSpec::dihedral(4));
  CHECK(nilpotency_step(d4) == 2);  // order 8, two-step
  Group d5(GroupSpec::dihedral(5));
  CHECK(nilpotency_step(d5) == -1);  // not nilpotent
}

TEST_CASE("budgets stop runaway enumeration") {
  Group h(GroupSpec::heisenberg(50), 1000);  // order 125000 over a 1000 budget
  CHECK_THROWS_AS(h.elements(), VtgError);
}

TEST_CASE("element rendering") {
  Group h3(GroupSpec::heisenberg(3));
  CHECK(h3.elem_str({1, 2, 0}) == "(1,2,0)");
  Group z5(GroupSpec::cyclic_power(5, 1));
  CHECK(z5.elem_str({3}) == "(3)");
}

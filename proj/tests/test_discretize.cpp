#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "vtg/discretize.hpp"

using namespace vtg;

TEST_CASE("sample metric names parse") {
  CHECK(parse_sample_metric("euclidean") == SampleMetric::euclidean);
  CHECK(parse_sample_metric("l1-torus") == SampleMetric::l1_torus);
  CHECK(parse_sample_metric("circle") == SampleMetric::circle);
  CHECK(parse_sample_metric("matrix") == SampleMetric::matrix);
  CHECK_THROWS_AS(parse_sample_metric("hyperbolic"), VtgError);
}

TEST_CASE("ambient distances per metric") {
  PointSample euclid;
  euclid.metric = SampleMetric::euclidean;
  euclid.dim = 2;
  euclid.coords = {{0.0, 0.0}, {3.0, 4.0}};
  CHECK(euclid.dist(0, 1) == Catch::Approx(5.0));
  CHECK(euclid.diameter() == Catch::Approx(5.0));

  PointSample torus;
  torus.metric = SampleMetric::l1_torus;
  torus.dim = 2;
  torus.coords = {{0.1, 0.1}, {0.9, 0.9}};
  CHECK(torus.dist(0, 1) == Catch::Approx(0.4));  // wraps both coordinates

  PointSample circ;
  circ.metric = SampleMetric::circle;
  circ.dim = 1;
  circ.coords = {{0.1}, {2.0 * std::numbers::pi - 0.1}};
  CHECK(circ.dist(0, 1) == Catch::Approx(0.2));

  PointSample mat;
  mat.metric = SampleMetric::matrix;
  mat.mat = {{0.0, 7.0}, {7.0, 0.0}};
  CHECK(mat.size() == 2);
  CHECK(mat.dist(0, 1) == 7.0);
}

TEST_CASE("point csv loading skips header and id column") {
  const char* path = "tmp_points.csv";
  {
    std::ofstream out(path);
    out << "id,x,y\n0,0.0,0.0\n1,1.5,2.0\n\n2,3.0,0.25\n";
  }
  PointSample s = load_point_csv(path, SampleMetric::euclidean);
  CHECK(s.size() == 3);
  CHECK(s.dim == 2);
  CHECK(s.coords[1][0] == Catch::Approx(1.5));
  CHECK(s.coords[2][1] == Catch::Approx(0.25));

  {
    std::ofstream out(path);
    out << "id,x,y\n0,1.0,2.0\n1,3.0\n";
  }
  CHECK_THROWS_AS(load_point_csv(path, SampleMetric::euclidean), VtgError);

  {
    std::ofstream out(path);
    out << "id,x,y\n0,1.0,2.0\n";
  }
  CHECK_THROWS_AS(load_point_csv(path, SampleMetric::circle), VtgError);  // needs 1 dim
  CHECK_THROWS_AS(load_point_csv(path, SampleMetric::matrix), VtgError);
  CHECK_THROWS_AS(load_point_csv("no_such_points.csv", SampleMetric::euclidean), VtgError);
  std::remove(path);
}

TEST_CASE("built-in samples have the expected shape") {
  PointSample c = circle_sample(100);
  CHECK(c.size() == 100);
  CHECK(c.dist(0, 50) == Catch::Approx(std::numbers::pi));
  CHECK(c.diameter() == Catch::Approx(std::numbers::pi));

  PointSample t = torus_grid_sample(5);
  CHECK(t.size() == 25);
  CHECK(t.dim == 2);
  CHECK(t.dist(0, 24) == Catch::Approx(0.4));  // (0,0) vs (0.8,0.8) wraps to 0.2+0.2
}

TEST_CASE("greedy nets are separated and maximal") {
  PointSample c = circle_sample(100);
  std::vector<int> net = max_separated_net(c, 0.1);
  CHECK(net.size() == 50);  // sample spacing just under 0.1 keeps every other point
  for (size_t a = 0; a < net.size(); ++a)
    for (size_t b = a + 1; b < net.size(); ++b)
      CHECK(c.dist(net[a], net[b]) >= 0.1 - 1e-12);
  for (int p = 0; p < c.size(); ++p) {
    double best = 1e300;
    for (int j : net) best = std::min(best, c.dist(p, j));
    CHECK(best < 0.1);
  }
  CHECK_THROWS_AS(max_separated_net(c, 0.0), VtgError);
}

TEST_CASE("net graphs connect points within four separations") {
  PointSample c = circle_sample(100);
  NetGraph ng = build_net_graph(c, 0.1);
  CHECK(ng.graph.n == 50);
  CHECK(ng.edge_length == Catch::Approx(0.4));
  CHECK(ng.connected);
  CHECK(ng.graph.degree(0) == 6);  // three net neighbours on each side

  PointSample gap;
  gap.metric = SampleMetric::euclidean;
  gap.dim = 1;
  gap.coords = {{0.0}, {1.0}};
  NetGraph split = build_net_graph(gap, 0.05);
  CHECK_FALSE(split.connected);
  CHECK_THROWS_AS(verify_qi(gap, split), VtgError);
  CHECK_THROWS_AS(net_sample_distance(gap, split), VtgError);
}

TEST_CASE("net graph metric is a quasi-isometry of the sample") {
  PointSample c = circle_sample(100);
  NetGraph ng = build_net_graph(c, 0.1);
  QiReport rep = verify_qi(c, ng);
  CHECK(rep.lipschitz_ok);
  CHECK(rep.chain_ok);
  CHECK(rep.additive == Catch::Approx(0.4));
  CHECK(rep.multiplicative >= 1.0);
  CHECK(rep.multiplicative <= 4.0);
}

TEST_CASE("net to sample distance bound stays small on dense circles") {
  PointSample c = circle_sample(100);
  NetGraph ng = build_net_graph(c, 0.1);
  MapDistortionReport rep = net_sample_distance(c, ng);
  CHECK(rep.pairs_checked == 50 * 49 / 2);
  CHECK(rep.codensity < 0.05);
  CHECK(rep.eps < 0.15);
  CHECK(rep.gh_upper < 0.35);
}

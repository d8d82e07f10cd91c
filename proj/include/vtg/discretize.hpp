#pragma once

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "vtg/error.hpp"
#include "vtg/gh.hpp"
#include "vtg/graph.hpp"

namespace vtg {

enum class SampleMetric { euclidean, l1_torus, circle, matrix };

inline SampleMetric parse_sample_metric(const std::string& name) {
  if (name == "euclidean") return SampleMetric::euclidean;
  if (name == "l1-torus") return SampleMetric::l1_torus;
  if (name == "circle") return SampleMetric::circle;
  if (name == "matrix") return SampleMetric::matrix;
  fail_input("unknown sample metric '" + name + "'");
}

// A finite point cloud with one of four ambient metrics: Euclidean
// coordinates, the unit-cube l1 torus, angles on a circle of circumference
// 2 pi, or an explicit distance matrix.
struct PointSample {
  SampleMetric metric = SampleMetric::euclidean;
  int dim = 0;
  std::vector<std::vector<double>> coords;
  std::vector<std::vector<double>> mat;  // used when metric == matrix

  int size() const {
    return metric == SampleMetric::matrix ? int(mat.size()) : int(coords.size());
  }

  double dist(int i, int j) const {
    switch (metric) {
      case SampleMetric::euclidean: {
        double s = 0.0;
        for (int d = 0; d < dim; ++d) {
          double v = coords[size_t(i)][size_t(d)] - coords[size_t(j)][size_t(d)];
          s += v * v;
        }
        return std::sqrt(s);
      }
      case SampleMetric::l1_torus: {
        double s = 0.0;
        for (int d = 0; d < dim; ++d) {
          double v = std::abs(coords[size_t(i)][size_t(d)] - coords[size_t(j)][size_t(d)]);
          v -= std::floor(v);
          s += std::min(v, 1.0 - v);
        }
        return s;
      }
      case SampleMetric::circle: {
        double two_pi = 2.0 * std::numbers::pi;
        double v = std::fmod(std::abs(coords[size_t(i)][0] - coords[size_t(j)][0]), two_pi);
        return std::min(v, two_pi - v);
      }
      case SampleMetric::matrix:
        return mat[size_t(i)][size_t(j)];
    }
    return 0.0;
  }

  double diameter() const {
    double d = 0.0;
    int n = size();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) d = std::max(d, dist(i, j));
    return d;
  }
};

// Reads `id,x1,...,xm` rows; the header row is skipped, ids are ignored and
// rows keep file order.
inline PointSample load_point_csv(const std::string& path, SampleMetric metric) {
  if (metric == SampleMetric::matrix)
    fail_input("matrix samples are built in memory, not loaded from point csv");
  std::ifstream in(path);
  if (!in) fail_input("cannot open point file '" + path + "'");
  PointSample s;
  s.metric = metric;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    bool first = true;
    while (std::getline(ss, cell, ',')) {
      if (first) {
        first = false;
        continue;
      }
      row.push_back(std::stod(cell));
    }
    if (row.empty()) fail_input("point row without coordinates in '" + path + "'");
    s.coords.push_back(std::move(row));
  }
  if (s.coords.empty()) fail_input("no points in '" + path + "'");
  s.dim = int(s.coords[0].size());
  for (const auto& row : s.coords)
    if (int(row.size()) != s.dim) fail_input("ragged point rows in '" + path + "'");
  if (metric == SampleMetric::circle && s.dim != 1)
    fail_input("circle samples are one dimensional angles");
  return s;
}

inline PointSample circle_sample(int k) {
  PointSample s;
  s.metric = SampleMetric::circle;
  s.dim = 1;
  double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < k; ++i) s.coords.push_back({two_pi * double(i) / double(k)});
  return s;
}

inline PointSample torus_grid_sample(int per_side) {
  PointSample s;
  s.metric = SampleMetric::l1_torus;
  s.dim = 2;
  for (int a = 0; a < per_side; ++a)
    for (int b = 0; b < per_side; ++b)
      s.coords.push_back({double(a) / per_side, double(b) / per_side});
  return s;
}

// First-come greedy net: scan points in input order and keep those at
// distance at least t from everything kept so far. The result is maximal, so
// every sample point is within t of some net point.
inline std::vector<int> max_separated_net(const PointSample& s, double t) {
  if (t <= 0.0) fail_input("net separation must be positive");
  std::vector<int> net;
  for (int i = 0; i < s.size(); ++i) {
    bool ok = true;
    for (int j : net)
      if (s.dist(i, j) < t) {
        ok = false;
        break;
      }
    if (ok) net.push_back(i);
  }
  return net;
}

struct NetGraph {
  std::vector<int> net;  // sample indices of the net points
  LabeledGraph graph;    // one vertex per net point, in net order
  double t = 0.0;
  double edge_length = 0.0;  // every edge counts as 4 t
  bool connected = false;
};

// Connects net points whose ambient distance is at most 4 t and assigns each
// edge the uniform length 4 t, turning the net into a graph metric space.
inline NetGraph build_net_graph(const PointSample& s, double t) {
  NetGraph ng;
  ng.t = t;
  ng.edge_length = 4.0 * t;
  ng.net = max_separated_net(s, t);
  ng.graph.n = int(ng.net.size());
  for (size_t a = 0; a < ng.net.size(); ++a)
    for (size_t b = a + 1; b < ng.net.size(); ++b)
      if (s.dist(ng.net[a], ng.net[b]) <= 4.0 * t + 1e-12)
        ng.graph.add_edge(int(a), int(b));
  ng.graph.finalize();
  ng.connected = ng.graph.connected();
  return ng;
}

struct QiReport {
  bool lipschitz_ok = false;  // ambient distance never exceeds graph distance
  bool chain_ok = false;      // graph distance <= 4 ceil(amb / t) t on all pairs
  double multiplicative = 1.0;  // smallest L with graph <= L * amb + 4 t
  double additive = 0.0;        // fixed at 4 t
  int worst_u = -1, worst_v = -1;  // net indices of the loosest pair
};

// Compares the net graph metric (4 t per hop) against the ambient metric on
// all net pairs. Both bounds hold whenever the sample is dense enough in a
// geodesic space: edges only join points within 4 t (so graph distance
// dominates ambient distance), and chaining along an ambient geodesic caps
// the graph distance from above.
inline QiReport verify_qi(const PointSample& s, const NetGraph& ng) {
  if (!ng.connected) fail_input("net graph is disconnected, no comparison possible");
  QiReport rep;
  rep.additive = 4.0 * ng.t;
  rep.lipschitz_ok = true;
  rep.chain_ok = true;
  int n = ng.graph.n;
  for (int a = 0; a < n; ++a) {
    std::vector<int> hops = bfs_dist_raw(ng.graph, a);
    for (int b = a + 1; b < n; ++b) {
      double amb = s.dist(ng.net[size_t(a)], ng.net[size_t(b)]);
      double gd = ng.edge_length * double(hops[size_t(b)]);
      if (gd < amb - 1e-9) rep.lipschitz_ok = false;
      double chain = 4.0 * std::ceil(amb / ng.t - 1e-12) * ng.t;
      if (gd > chain + 1e-9) rep.chain_ok = false;
      if (amb > 1e-12) {
        double mult = (gd - rep.additive) / amb;
        if (mult > rep.multiplicative) {
          rep.multiplicative = mult;
          rep.worst_u = a;
          rep.worst_v = b;
        }
      }
    }
  }
  return rep;
}

// Gromov-Hausdorff bound between the rescaled net graph and the rescaled
// sample it was drawn from, using the net inclusion as the comparison map.
inline MapDistortionReport net_sample_distance(const PointSample& s, const NetGraph& ng) {
  if (!ng.connected) fail_input("net graph is disconnected, no comparison possible");
  int n = ng.graph.n;
  std::vector<std::vector<int>> hops(static_cast<size_t>(n));
  int graph_diam_hops = 0;
  for (int a = 0; a < n; ++a) {
    hops[size_t(a)] = bfs_dist_raw(ng.graph, a);
    for (int b = 0; b < n; ++b) graph_diam_hops = std::max(graph_diam_hops, hops[size_t(a)][size_t(b)]);
  }
  double sample_diam = s.diameter();
  if (graph_diam_hops == 0 || sample_diam <= 0.0)
    fail_input("degenerate spaces in net comparison");
  auto dist_x = [&](int a, int b) {
    return double(hops[size_t(a)][size_t(b)]) / double(graph_diam_hops);
  };
  auto dist_y = [&](int a, int b) {
    return s.dist(ng.net[size_t(a)], ng.net[size_t(b)]) / sample_diam;
  };
  double cod = 0.0;
  for (int p = 0; p < s.size(); ++p) {
    double best = 1e300;
    for (int j : ng.net) best = std::min(best, s.dist(p, j));
    cod = std::max(cod, best);
  }
  cod /= sample_diam;
  std::vector<int> ids(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) ids[size_t(i)] = i;
  return map_distortion(ids, dist_x, dist_y, cod, 1.0);
}

}  // namespace vtg

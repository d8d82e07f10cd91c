#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

#include "vtg/graph.hpp"
#include "vtg/metric.hpp"

namespace vtg {

// Shared cache of BFS distance rows, keyed by source vertex.
class DistCache {
 public:
  explicit DistCache(const LabeledGraph& g) : g_(g) {}
  const std::vector<int>& row(int v) {
    auto it = rows_.find(v);
    if (it != rows_.end()) return it->second;
    return rows_.emplace(v, bfs(g_, v).dist).first->second;
  }
  int dist(int u, int v) { return row(u)[v]; }

 private:
  const LabeledGraph& g_;
  std::unordered_map<int, std::vector<int>> rows_;
};

// Three geodesics from a common center whose points separate at full speed:
// d(g_i(k), g_j(l)) >= max(k, l) for i != j.
struct Caret3 {
  int center = 0;
  int branch_length = 0;
  std::array<std::vector<int>, 3> branches;  // each starts at center, R+1 vertices
};

inline bool verify_caret(const LabeledGraph& g, const Caret3& c, DistCache& cache) {
  int r = c.branch_length;
  for (const auto& br : c.branches) {
    if (int(br.size()) != r + 1 || br[0] != c.center) return false;
    const std::vector<int>& from_center = cache.row(c.center);
    for (int k = 0; k <= r; ++k) {
      if (from_center[br[size_t(k)]] != k) return false;
      if (k > 0) {
        const auto& nb = g.adj[size_t(br[size_t(k - 1)])];
        if (!std::binary_search(nb.begin(), nb.end(), br[size_t(k)])) return false;
      }
    }
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int k = 1; k <= r; ++k) {
        const std::vector<int>& from_k = cache.row(c.branches[size_t(i)][size_t(k)]);
        for (int l = 1; l <= r; ++l)
          if (from_k[c.branches[size_t(j)][size_t(l)]] < std::max(k, l)) return false;
      }
  return true;
}

struct CaretSearchResult {
  int branch_length = 0;
  std::optional<Caret3> caret;  // empty exactly when branch_length = 0
};

// Largest R <= r_max admitting a 3-caret at v0 among BFS-tree geodesics.
// Branch pairs are tested for the separation condition, then a compatible
// triple is read off the pairwise compatibility graph.
inline CaretSearchResult max_caret_branch(const LabeledGraph& g, int v0, int r_max,
                                          int max_branches_per_radius = 400) {
  DistCache cache(g);
  DistanceField f = bfs(g, v0);
  std::vector<int> parent = lex_parents(g, f);
  CaretSearchResult out;
  for (int r = std::min(r_max, f.ecc); r >= 1; --r) {
    std::vector<std::vector<int>> branch;
    for (int v = 0; v < g.n && int(branch.size()) < max_branches_per_radius; ++v) {
      if (f.dist[v] != r) continue;
      std::vector<int> path = path_to_source(parent, v);  // v .. v0
      std::reverse(path.begin(), path.end());
      branch.push_back(std::move(path));
    }
    int b = int(branch.size());
    if (b < 3) continue;
    auto compatible = [&](const std::vector<int>& p, const std::vector<int>& q) {
      for (int k = 1; k <= r; ++k) {
        const std::vector<int>& from_k = cache.row(p[size_t(k)]);
        for (int l = 1; l <= r; ++l)
          if (from_k[q[size_t(l)]] < std::max(k, l)) return false;
      }
      return true;
    };
    std::vector<std::vector<char>> ok(size_t(b), std::vector<char>(size_t(b), 0));
    for (int i = 0; i < b; ++i)
      for (int j = i + 1; j < b; ++j)
        ok[size_t(i)][size_t(j)] = ok[size_t(j)][size_t(i)] =
            compatible(branch[size_t(i)], branch[size_t(j)]) ? 1 : 0;
    for (int i = 0; i < b; ++i)
      for (int j = i + 1; j < b; ++j) {
        if (!ok[size_t(i)][size_t(j)]) continue;
        for (int h = j + 1; h < b; ++h) {
          if (!ok[size_t(i)][size_t(h)] || !ok[size_t(j)][size_t(h)]) continue;
          Caret3 c;
          c.center = v0;
          c.branch_length = r;
          c.branches = {branch[size_t(i)], branch[size_t(j)], branch[size_t(h)]};
          if (!verify_caret(g, c, cache)) continue;
          out.branch_length = r;
          out.caret = std::move(c);
          return out;
        }
      }
  }
  return out;
}

// A caret of branch length R forces |B(v0,R)| >= R^(log_3 4); the report
// also evaluates the global volume threshold (1/2) eps^(e-1) D^(1+c(e-1))
// with e = log_3 4, meaningful when the graph is vertex-transitive.
struct CaretGrowthReport {
  int branch_length = 0;
  i64 ball_size = 0;
  double local_bound = 0.0;
  bool local_pass = false;
  int graph_diameter = 0;
  double eps = 0.0;
  double c = 1.0;
  double global_threshold = 0.0;
  bool global_pass = false;
  bool transitive = false;
};

inline CaretGrowthReport caret_growth_check(const LabeledGraph& g, const Caret3& caret,
                                            double c = 1.0) {
  DistCache cache(g);
  if (!verify_caret(g, caret, cache)) fail_input("caret witness fails verification");
  CaretGrowthReport rep;
  rep.branch_length = caret.branch_length;
  const std::vector<int>& from_center = cache.row(caret.center);
  for (int v = 0; v < g.n; ++v)
    if (from_center[v] >= 0 && from_center[v] <= caret.branch_length) ++rep.ball_size;
  const double e = std::log(4.0) / std::log(3.0);
  rep.local_bound = caret.branch_length >= 1 ? std::pow(double(caret.branch_length), e) : 0.0;
  rep.local_pass = double(rep.ball_size) >= rep.local_bound;
  rep.graph_diameter = diameter(g);
  rep.c = c;
  rep.eps = double(caret.branch_length) / std::pow(double(rep.graph_diameter), c);
  rep.global_threshold =
      0.5 * std::pow(rep.eps, e - 1.0) * std::pow(double(rep.graph_diameter), 1.0 + c * (e - 1.0));
  rep.global_pass = double(g.n) > rep.global_threshold;
  rep.transitive = g.declared_transitive;
  return rep;
}

// Triangle of canonical BFS geodesics between three corners. Fatness is the
// minimum over every vertex of the sum of its distances to the three sides.
struct GeodesicTriangle {
  std::array<int, 3> corners{};
  std::array<std::vector<int>, 3> sides;  // side i joins corners i and (i+1)%3
  i64 fatness = 0;
};

inline std::vector<int> lex_geodesic(const LabeledGraph& g, int from, int to) {
  DistanceField f = bfs(g, from);
  if (f.dist[to] < 0) fail_input("no path between requested vertices");
  std::vector<int> parent = lex_parents(g, f);
  return path_to_source(parent, to);  // to .. from
}

inline std::vector<i64> dist_to_set(const LabeledGraph& g, const std::vector<int>& set) {
  std::vector<i64> dist(size_t(g.n), -1);
  std::vector<int> queue;
  for (int v : set)
    if (dist[size_t(v)] < 0) {
      dist[size_t(v)] = 0;
      queue.push_back(v);
    }
  for (size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int w : g.adj[u])
      if (dist[size_t(w)] < 0) {
        dist[size_t(w)] = dist[size_t(u)] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

inline i64 fatness(const LabeledGraph& g, const GeodesicTriangle& t) {
  DistCache cache(g);
  for (int i = 0; i < 3; ++i) {
    const std::vector<int>& side = t.sides[size_t(i)];
    int a = t.corners[size_t(i)], b = t.corners[size_t((i + 1) % 3)];
    if (side.empty()) fail_input("empty triangle side");
    bool joins = (side.front() == a && side.back() == b) ||
                 (side.front() == b && side.back() == a);
    if (!joins) fail_input("triangle side does not join its corners");
    if (int(side.size()) != cache.dist(a, b) + 1) fail_input("triangle side is not geodesic");
    for (size_t k = 1; k < side.size(); ++k)
      if (cache.dist(side[k - 1], side[k]) != 1) fail_input("triangle side is not a path");
  }
  std::array<std::vector<i64>, 3> d;
  for (int i = 0; i < 3; ++i) d[size_t(i)] = dist_to_set(g, t.sides[size_t(i)]);
  i64 best = -1;
  for (int v = 0; v < g.n; ++v) {
    if (d[0][size_t(v)] < 0 || d[1][size_t(v)] < 0 || d[2][size_t(v)] < 0) continue;
    i64 sum = d[0][size_t(v)] + d[1][size_t(v)] + d[2][size_t(v)];
    if (best < 0 || sum < best) best = sum;
  }
  return best;
}

inline GeodesicTriangle make_triangle(const LabeledGraph& g, int a, int b, int c) {
  GeodesicTriangle t;
  t.corners = {a, b, c};
  std::vector<int> s0 = lex_geodesic(g, a, b);  // b .. a
  std::vector<int> s1 = lex_geodesic(g, b, c);
  std::vector<int> s2 = lex_geodesic(g, c, a);
  std::reverse(s0.begin(), s0.end());
  std::reverse(s1.begin(), s1.end());
  std::reverse(s2.begin(), s2.end());
  t.sides = {std::move(s0), std::move(s1), std::move(s2)};
  t.fatness = fatness(g, t);
  return t;
}

struct FatTriangleResult {
  bool found = false;
  GeodesicTriangle best;
  i64 best_fatness = -1;
  i64 evaluated = 0;
};

// Seeded search for a triangle of fatness >= delta: corners x, y realizing
// an extremal pair, third corner scanned near the midpoint, then randomized
// corner triples. Evaluation is exact; a miss means budget exhausted, never
// proven absence.
inline FatTriangleResult find_fat_triangle(const LabeledGraph& g, double delta,
                                           int midpoint_candidates = 2000,
                                           int random_trials = 500, unsigned seed = 2026) {
  FatTriangleResult out;
  if (g.n < 3) return out;
  DistanceField f0 = bfs(g, 0);
  if (!f0.complete) fail_input("fat triangle search needs a connected graph");
  int x = 0;
  for (int v = 0; v < g.n; ++v)
    if (f0.dist[v] == f0.ecc) {
      x = v;
      break;
    }
  DistanceField fx = bfs(g, x);
  int dia = fx.ecc;
  int y = 0;
  for (int v = 0; v < g.n; ++v)
    if (fx.dist[v] == dia) {
      y = v;
      break;
    }
  DistanceField fy = bfs(g, y);

  std::vector<int> side_xy = lex_geodesic(g, x, y);
  std::vector<char> on_side(size_t(g.n), 0);
  for (int v : side_xy) on_side[size_t(v)] = 1;

  auto consider = [&](int a, int b, int c) {
    if (a == b || b == c || a == c) return false;
    GeodesicTriangle t = make_triangle(g, a, b, c);
    ++out.evaluated;
    if (t.fatness > out.best_fatness) {
      out.best_fatness = t.fatness;
      out.best = std::move(t);
    }
    return double(out.best_fatness) >= delta;
  };

  int window = std::max(1, dia / 8);
  int half = dia / 2;
  int tried = 0;
  for (int z = 0; z < g.n && tried < midpoint_candidates; ++z) {
    if (on_side[size_t(z)]) continue;
    if (std::abs(fx.dist[z] - half) > window) continue;
    if (std::abs(fy.dist[z] - half) > window) continue;
    ++tried;
    if (consider(x, y, z)) {
      out.found = true;
      return out;
    }
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, g.n - 1);
  for (int t = 0; t < random_trials; ++t) {
    if (consider(pick(rng), pick(rng), pick(rng))) {
      out.found = true;
      return out;
    }
  }
  return out;
}

// Maximal separated centers with small balls around them, the ball graph H
// (edges when two balls are joined by a path avoiding every other ball),
// and a sector per vertex. When H is a single cycle, sectors are reindexed
// in its cyclic order.
struct NetDecomposition {
  double c = 1.0;
  int graph_diameter = 0;
  i64 sep_hops = 0;
  i64 ball_hops = 0;
  std::vector<int> centers;  // cyclic order when h_is_cycle
  LabeledGraph h;
  bool h_is_cycle = false;
  std::vector<int> sector_of;  // per vertex, index into centers
  bool sectors_valid = false;  // sectors adjacent only to cyclic neighbors
};

inline NetDecomposition net_decomposition(const LabeledGraph& g, double c) {
  if (!(c > 0.0 && c <= 1.0)) fail_input("net parameter must lie in (0, 1]");
  NetDecomposition net;
  net.c = c;
  net.graph_diameter = diameter(g);
  double d = double(net.graph_diameter);
  net.sep_hops = std::max<i64>(2, i64(std::ceil(c * d / 10.0 - 1e-9)));
  net.ball_hops = std::max<i64>(1, i64(std::ceil(c * d / 100.0 - 1e-9)));

  DistCache cache(g);
  for (int v = 0; v < g.n; ++v) {
    bool far = true;
    for (int x : net.centers)
      if (cache.dist(x, v) < net.sep_hops) {
        far = false;
        break;
      }
    if (far) net.centers.push_back(v);
  }
  int k = int(net.centers.size());

  std::vector<std::vector<int>> ball(static_cast<size_t>(k));
  std::vector<int> ball_owner(size_t(g.n), -1);  // -1 = no ball
  for (int j = 0; j < k; ++j) {
    const std::vector<int>& row = cache.row(net.centers[size_t(j)]);
    for (int v = 0; v < g.n; ++v)
      if (row[v] >= 0 && i64(row[v]) <= net.ball_hops) {
        ball[size_t(j)].push_back(v);
        if (ball_owner[size_t(v)] < 0) ball_owner[size_t(v)] = j;
      }
  }

  // H edge (i,j): some path joins ball i to ball j avoiding every other ball
  net.h.n = k;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      std::vector<char> blocked(size_t(g.n), 0);
      for (int b = 0; b < k; ++b)
        if (b != i && b != j)
          for (int v : ball[size_t(b)]) blocked[size_t(v)] = 1;
      std::vector<char> target(size_t(g.n), 0);
      for (int v : ball[size_t(j)]) target[size_t(v)] = 1;
      std::vector<int> queue;
      std::vector<char> seen(size_t(g.n), 0);
      bool reached = false;
      for (int v : ball[size_t(i)])
        if (!blocked[size_t(v)]) {
          seen[size_t(v)] = 1;
          queue.push_back(v);
          if (target[size_t(v)]) reached = true;
        }
      for (size_t head = 0; head < queue.size() && !reached; ++head) {
        for (int w : g.adj[queue[head]]) {
          if (seen[size_t(w)] || blocked[size_t(w)]) continue;
          if (target[size_t(w)]) {
            reached = true;
            break;
          }
          seen[size_t(w)] = 1;
          queue.push_back(w);
        }
      }
      if (reached) net.h.add_edge(i, j);
    }
  net.h.finalize();

  net.h_is_cycle = k >= 3 && net.h.connected();
  for (int v = 0; v < k && net.h_is_cycle; ++v)
    if (net.h.degree(v) != 2) net.h_is_cycle = false;

  if (net.h_is_cycle) {
    // walk the cycle to fix the cyclic order of centers
    std::vector<int> order{0};
    std::vector<char> used(size_t(k), 0);
    used[0] = 1;
    while (int(order.size()) < k) {
      int cur = order.back();
      int nxt = -1;
      for (int w : net.h.adj[cur])
        if (!used[size_t(w)]) {
          nxt = w;
          break;
        }
      if (nxt < 0) break;
      used[size_t(nxt)] = 1;
      order.push_back(nxt);
    }
    if (int(order.size()) == k) {
      std::vector<int> reordered(static_cast<size_t>(k));
      std::vector<int> new_index(static_cast<size_t>(k));
      for (int p = 0; p < k; ++p) {
        reordered[size_t(p)] = net.centers[size_t(order[size_t(p)])];
        new_index[size_t(order[size_t(p)])] = p;
      }
      net.centers = std::move(reordered);
      LabeledGraph h2;
      h2.n = k;
      for (auto [a, b] : net.h.edges) h2.add_edge(new_index[size_t(a)], new_index[size_t(b)]);
      h2.finalize();
      net.h = std::move(h2);
      for (int& o : ball_owner)
        if (o >= 0) o = new_index[size_t(o)];
    } else {
      net.h_is_cycle = false;  // degree-2 but disconnected walk: not one cycle
    }
  }

  // sectors: each ball seeds its own sector, everything else joins the
  // nearest ball (ties to the lowest sector index)
  net.sector_of.assign(size_t(g.n), -1);
  std::vector<int> queue;
  for (int v = 0; v < g.n; ++v)
    if (ball_owner[size_t(v)] >= 0) {
      net.sector_of[size_t(v)] = ball_owner[size_t(v)];
      queue.push_back(v);
    }
  for (size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int w : g.adj[u])
      if (net.sector_of[size_t(w)] < 0) {
        net.sector_of[size_t(w)] = net.sector_of[size_t(u)];
        queue.push_back(w);
      }
  }

  net.sectors_valid = net.h_is_cycle;
  if (net.h_is_cycle)
    for (auto [u, v] : g.edges) {
      int a = net.sector_of[size_t(u)], b = net.sector_of[size_t(v)];
      int gap = std::abs(a - b);
      if (std::min(gap, k - gap) > 1) net.sectors_valid = false;
    }
  return net;
}

struct GeodesicCycle {
  std::vector<int> vertices;  // closed: last is adjacent to first
  i64 length = 0;
  bool certified = false;
};

// True iff the closed walk is geodesic: graph distance between any two of
// its vertices equals the shorter arc along the walk.
inline bool verify_geodesic_cycle(const LabeledGraph& g, const std::vector<int>& cycle) {
  i64 len = i64(cycle.size());
  if (len < 3) fail_input("cycle needs at least three vertices");
  for (size_t i = 0; i < cycle.size(); ++i) {
    int u = cycle[i], v = cycle[(i + 1) % cycle.size()];
    if (u < 0 || u >= g.n) fail_input("cycle vertex out of range");
    if (!std::binary_search(g.adj[u].begin(), g.adj[u].end(), v))
      fail_input("cycle is not a closed walk of adjacent vertices");
  }
  for (size_t i = 0; i < cycle.size(); ++i) {
    DistanceField f = bfs(g, cycle[i]);
    for (size_t j = 0; j < cycle.size(); ++j) {
      i64 arc = i64(j > i ? j - i : i - j);
      i64 cyc = std::min(arc, len - arc);
      if (i64(f.dist[cycle[j]]) != cyc) return false;
    }
  }
  return true;
}

// Shortest loop winding once around the sector cycle: BFS on the cover
// (vertex, level) where crossing the seam between the last sector and
// sector 0 shifts the level, minimized over every base vertex.
inline GeodesicCycle shortest_winding_loop(const LabeledGraph& g,
                                           const NetDecomposition& net) {
  if (!net.h_is_cycle) fail_input("net ball graph is not a cycle");
  int k = net.h.n;
  if (k < 3) fail_input("sector cycle too short");
  const std::vector<int>& sec = net.sector_of;

  auto level_shift = [&](int u, int v) {
    int a = sec[size_t(u)], b = sec[size_t(v)];
    if (a == k - 1 && b == 0) return +1;
    if (a == 0 && b == k - 1) return -1;
    return 0;
  };

  const int lo = -1, hi = k + 1, levels = hi - lo + 1;
  auto id = [&](int v, int level) { return (level - lo) * g.n + v; };

  i64 best_len = -1;
  std::vector<int> best_path;
  std::vector<int> dist(size_t(g.n) * size_t(levels));
  std::vector<int> parent(size_t(g.n) * size_t(levels));
  for (int base = 0; base < g.n; ++base) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::vector<int> queue{id(base, 0)};
    dist[size_t(queue[0])] = 0;
    int goal = -1;
    for (size_t head = 0; head < queue.size() && goal < 0; ++head) {
      int cur = queue[head];
      int level = cur / g.n + lo, v = cur % g.n;
      if (best_len >= 0 && i64(dist[size_t(cur)]) >= best_len) break;
      for (int w : g.adj[v]) {
        int nl = level + level_shift(v, w);
        if (nl < lo || nl > hi) continue;
        int nid = id(w, nl);
        if (dist[size_t(nid)] >= 0) continue;
        dist[size_t(nid)] = dist[size_t(cur)] + 1;
        parent[size_t(nid)] = cur;
        if (w == base && (nl == 1 || nl == -1)) {
          goal = nid;
          break;
        }
        queue.push_back(nid);
      }
    }
    if (goal >= 0 && (best_len < 0 || i64(dist[size_t(goal)]) < best_len)) {
      best_len = dist[size_t(goal)];
      best_path.clear();
      for (int cur = goal; cur >= 0; cur = parent[size_t(cur)])
        best_path.push_back(cur % g.n);
      std::reverse(best_path.begin(), best_path.end());
    }
  }
  if (best_len < 0) fail_certification("no winding loop found within the level budget");

  GeodesicCycle cyc;
  best_path.pop_back();  // closed walk: base appears at both ends
  cyc.vertices = std::move(best_path);
  cyc.length = best_len;
  cyc.certified = verify_geodesic_cycle(g, cyc.vertices);
  return cyc;
}

// Upper bound on how far the R-ball at a center strays from a geodesic
// segment through the center: min over sampled center-through segments of
// the max distance from ball vertices to the segment.
struct LineDefectReport {
  i64 defect = -1;
  std::vector<int> segment;
  int segments_tried = 0;
};

inline LineDefectReport line_defect(const LabeledGraph& g, int center, int r,
                                    int endpoint_cap = 8) {
  DistanceField fc = bfs(g, center);
  if (r > fc.ecc) fail_input("radius exceeds eccentricity of the center");
  std::vector<int> parent = lex_parents(g, fc);
  int r1 = fc.ecc / 2, r2 = fc.ecc - fc.ecc / 2;

  std::vector<int> near, far;
  for (int v = 0; v < g.n && int(near.size()) < endpoint_cap; ++v)
    if (fc.dist[v] == r1) near.push_back(v);
  for (int v = 0; v < g.n; ++v)
    if (fc.dist[v] == r2) far.push_back(v);

  std::vector<int> ball;
  for (int v = 0; v < g.n; ++v)
    if (fc.dist[v] >= 0 && fc.dist[v] <= r) ball.push_back(v);

  LineDefectReport rep;
  for (int w : near) {
    DistanceField fw = bfs(g, w);
    int used = 0;
    for (int w2 : far) {
      if (fw.dist[w2] != r1 + r2) continue;  // center must sit on a w..w2 geodesic
      if (++used > endpoint_cap) break;
      std::vector<int> seg = path_to_source(parent, w);  // w .. center
      std::vector<int> tail = path_to_source(parent, w2);
      std::reverse(tail.begin(), tail.end());  // center .. w2
      seg.insert(seg.end(), tail.begin() + 1, tail.end());
      std::vector<i64> dist_seg = dist_to_set(g, seg);
      i64 worst = 0;
      for (int v : ball) worst = std::max(worst, dist_seg[size_t(v)]);
      ++rep.segments_tried;
      if (rep.defect < 0 || worst < rep.defect) {
        rep.defect = worst;
        rep.segment = std::move(seg);
      }
    }
  }
  if (rep.defect < 0) {
    // no additive pair (e.g. tiny eccentricity): fall back to single rays
    for (int w : near) {
      std::vector<int> seg = path_to_source(parent, w);
      std::vector<i64> dist_seg = dist_to_set(g, seg);
      i64 worst = 0;
      for (int v : ball) worst = std::max(worst, dist_seg[size_t(v)]);
      ++rep.segments_tried;
      if (rep.defect < 0 || worst < rep.defect) {
        rep.defect = worst;
        rep.segment = std::move(seg);
      }
    }
  }
  return rep;
}

}  // namespace vtg

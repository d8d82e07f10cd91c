#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

#include "vtg/graph.hpp"
#include "vtg/group.hpp"

namespace vtg {

struct DistanceField {
  int source = 0;
  std::vector<int> dist;  // -1 = unreachable
  int ecc = 0;            // max over reached vertices
  bool complete = true;   // every vertex reached
};

inline DistanceField bfs(const LabeledGraph& g, int source) {
  if (source < 0 || source >= g.n) fail_input("bfs source out of range");
  DistanceField f;
  f.source = source;
  f.dist.assign(g.n, -1);
  f.dist[source] = 0;
  std::vector<int> queue{source};
  for (size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int w : g.adj[u])
      if (f.dist[w] < 0) {
        f.dist[w] = f.dist[u] + 1;
        f.ecc = std::max(f.ecc, f.dist[w]);
        queue.push_back(w);
      }
  }
  f.complete = int(queue.size()) == g.n;
  return f;
}

// Deterministic BFS tree: parent of v is its lowest-index neighbor one step
// closer to the source. Tree paths are then canonical geodesics.
inline std::vector<int> lex_parents(const LabeledGraph& g, const DistanceField& f) {
  std::vector<int> parent(g.n, -1);
  for (int v = 0; v < g.n; ++v) {
    if (v == f.source || f.dist[v] < 0) continue;
    for (int u : g.adj[v])  // adj is sorted, first hit is the minimum
      if (f.dist[u] == f.dist[v] - 1) {
        parent[v] = u;
        break;
      }
  }
  return parent;
}

// Vertices from v back to the BFS source, inclusive.
inline std::vector<int> path_to_source(const std::vector<int>& parent, int v) {
  std::vector<int> path{v};
  while (parent[path.back()] >= 0) path.push_back(parent[path.back()]);
  return path;
}

inline int diameter(const LabeledGraph& g) {
  if (g.n == 0) fail_input("empty graph");
  DistanceField f0 = bfs(g, 0);
  if (!f0.complete) fail_input("diameter of a disconnected graph");
  if (g.declared_transitive) return f0.ecc;
  int best = f0.ecc;
  for (int v = 1; v < g.n; ++v) best = std::max(best, bfs(g, v).ecc);
  return best;
}

// Cross-check helper: eccentricity maximum over every source.
inline int diameter_all_sources(const LabeledGraph& g) {
  int best = 0;
  for (int v = 0; v < g.n; ++v) {
    DistanceField f = bfs(g, v);
    if (!f.complete) fail_input("diameter of a disconnected graph");
    best = std::max(best, f.ecc);
  }
  return best;
}

// Cumulative ball sizes |B(source, r)| for r = 0..ecc. Counts are stored as
// doubles so synthetic profiles with astronomically large balls fit the same
// type; graph-derived counts stay exact (they are far below 2^53).
struct GrowthProfile {
  int source = 0;
  std::vector<double> counts;
  bool stabilized = false;  // final count is the whole space, so padding is exact

  i64 r_max() const { return i64(counts.size()) - 1; }
  bool can_query(i64 r) const { return r <= r_max() || stabilized; }
  double ball(i64 r) const {
    if (r < 0) fail_input("negative radius");
    if (r <= r_max()) return counts[size_t(r)];
    if (!stabilized) fail_input("growth profile too short for requested radius");
    return counts.back();
  }
};

inline GrowthProfile growth_profile(const LabeledGraph& g, int source) {
  DistanceField f = bfs(g, source);
  GrowthProfile p;
  p.source = source;
  p.counts.assign(size_t(f.ecc) + 1, 0.0);
  for (int v = 0; v < g.n; ++v)
    if (f.dist[v] >= 0) p.counts[size_t(f.dist[v])] += 1.0;
  for (size_t r = 1; r < p.counts.size(); ++r) p.counts[r] += p.counts[r - 1];
  p.stabilized = f.complete;
  return p;
}

// Least-squares slope of log ball size against log radius, fitted over the
// window where the ball is still genuinely growing: from radius 1 up to the
// first radius that already holds half the reached vertices. Saturated radii
// near the diameter would otherwise flatten the estimate.
inline double growth_exponent_fit(const GrowthProfile& p) {
  i64 rmax = p.r_max();
  if (rmax < 2) fail_input("growth profile too short to fit");
  double total = p.counts.back();
  i64 hi = rmax;
  for (i64 r = 1; r <= rmax; ++r)
    if (p.counts[size_t(r)] >= 0.5 * total) {
      hi = r;
      break;
    }
  hi = std::max<i64>(hi, 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, k = 0;
  for (i64 r = 1; r <= hi; ++r) {
    double x = std::log(double(r));
    double y = std::log(p.counts[size_t(r)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    k += 1.0;
  }
  double denom = k * sxx - sx * sx;
  if (denom <= 0.0) fail_input("growth fit window is degenerate");
  return (k * sxy - sx * sy) / denom;
}

struct DoublingReport {
  i64 factor = 100;
  int q = 1;
  double K = 0.0;  // factor^(2q)
  std::vector<std::pair<i64, double>> ratios;  // (R, |B(factor R)| / |B(R)|)
  i64 witness_radius = -1;                     // smallest R with ratio <= K
};

inline DoublingReport doubling_report(const GrowthProfile& p, int q, i64 factor = 100) {
  if (q < 1 || factor < 2) fail_input("doubling parameters out of range");
  DoublingReport rep;
  rep.factor = factor;
  rep.q = q;
  rep.K = std::pow(double(factor), 2.0 * q);
  i64 r_hi = p.stabilized ? p.r_max() : p.r_max() / factor;
  r_hi = std::max<i64>(r_hi, p.stabilized ? 1 : 0);
  if (r_hi < 1) fail_input("growth profile too short: no radius R with factor*R covered");
  for (i64 r = 1; r <= r_hi; ++r) {
    double ratio = p.ball(checked_mul(factor, r)) / p.ball(r);
    rep.ratios.emplace_back(r, ratio);
    if (rep.witness_radius < 0 && ratio <= rep.K) rep.witness_radius = r;
  }
  return rep;
}

// Finite metric space, either an explicit symmetric matrix or a graph whose
// hop distances are divided by a scale factor. Graph-backed spaces compute
// BFS rows lazily and cache them.
class FiniteMetricSpace {
 public:
  static FiniteMetricSpace from_matrix(std::vector<std::vector<double>> m) {
    FiniteMetricSpace s;
    s.n_ = int(m.size());
    if (s.n_ == 0) fail_input("empty metric space");
    for (const auto& row : m)
      if (int(row.size()) != s.n_) fail_input("distance matrix is not square");
    s.matrix_ = std::move(m);
    s.validate_matrix();
    return s;
  }

  static FiniteMetricSpace from_graph(LabeledGraph g, double scale) {
    if (scale <= 0.0) fail_input("scale divisor must be positive");
    if (g.n == 0) fail_input("empty graph");
    if (!g.connected()) fail_input("metric space needs a connected graph");
    FiniteMetricSpace s;
    s.n_ = g.n;
    s.scale_ = scale;
    s.graph_ = std::move(g);
    return s;
  }

  int size() const { return n_; }
  bool graph_backed() const { return graph_.has_value(); }
  double scale() const { return scale_; }
  const LabeledGraph& graph() const {
    if (!graph_) fail_input("metric space is not graph backed");
    return *graph_;
  }

  double dist(int i, int j) const {
    if (matrix_) return (*matrix_)[i][j];
    if (i == j) return 0.0;
    return double(row(i)[j]) / scale_;
  }

  i64 hop_dist(int i, int j) const {
    if (!graph_) fail_input("hop distance needs a graph backed space");
    return row(i)[j];
  }

  // Indices within the closed ball of the given radius around center.
  std::vector<int> ball_indices(int center, double radius) const {
    std::vector<int> out;
    if (matrix_) {
      for (int j = 0; j < n_; ++j)
        if ((*matrix_)[center][j] <= radius + 1e-12) out.push_back(j);
      return out;
    }
    i64 hop_cap = i64(std::floor(radius * scale_ * (1.0 + 1e-12) + 1e-9));
    std::vector<int> dist(n_, -1);
    std::vector<int> queue{center};
    dist[center] = 0;
    out.push_back(center);
    for (size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      if (i64(dist[u]) >= hop_cap) continue;
      for (int w : graph_->adj[u])
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
          out.push_back(w);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  double diameter() const {
    if (diameter_) return *diameter_;
    double d = 0.0;
    if (matrix_) {
      for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) d = std::max(d, (*matrix_)[i][j]);
    } else {
      d = double(vtg::diameter(*graph_)) / scale_;
    }
    diameter_ = d;
    return d;
  }

  // Symmetry, identity and triangle inequality. Exhaustive for matrices of
  // at most 500 points, sampled otherwise.
  bool check_axioms(int sample_triples = 2000, unsigned seed = 12345) const {
    if (matrix_ && n_ <= 500) {
      for (int i = 0; i < n_; ++i) {
        if ((*matrix_)[i][i] != 0.0) return false;
        for (int j = 0; j < n_; ++j) {
          if ((*matrix_)[i][j] < 0.0) return false;
          if ((*matrix_)[i][j] != (*matrix_)[j][i]) return false;
          if (i != j && (*matrix_)[i][j] == 0.0) return false;
        }
      }
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
          for (int k = 0; k < n_; ++k)
            if ((*matrix_)[i][j] > (*matrix_)[i][k] + (*matrix_)[k][j] + 1e-12)
              return false;
      return true;
    }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, n_ - 1);
    for (int t = 0; t < sample_triples; ++t) {
      int i = pick(rng), j = pick(rng), k = pick(rng);
      if (std::abs(dist(i, j) - dist(j, i)) > 1e-12) return false;
      if (dist(i, i) != 0.0) return false;
      if (dist(i, j) > dist(i, k) + dist(k, j) + 1e-12) return false;
    }
    return true;
  }

 private:
  void validate_matrix() const {
    if (!check_axioms()) fail_input("matrix violates metric axioms");
  }

  const std::vector<int>& row(int i) const {
    auto it = rows_.find(i);
    if (it != rows_.end()) return it->second;
    if (rows_.size() > 1024) rows_.clear();
    DistanceField f = bfs(*graph_, i);
    return rows_.emplace(i, std::move(f.dist)).first->second;
  }

  int n_ = 0;
  double scale_ = 1.0;
  std::optional<std::vector<std::vector<double>>> matrix_;
  std::optional<LabeledGraph> graph_;
  mutable std::unordered_map<int, std::vector<int>> rows_;
  mutable std::optional<double> diameter_;
};

// Covering bounds: greedy set cover by closed eps-balls gives an upper
// bound on the minimal covering number, and a maximal set with pairwise
// distance > 2 eps gives a lower bound (no eps-ball holds two such points).
struct CoveringReport {
  double eps = 0.0;
  int greedy_upper = 0;
  int packing_lower = 0;
  std::vector<int> greedy_centers;
  std::vector<int> packing_points;
};

inline CoveringReport covering_number(const FiniteMetricSpace& space, double eps) {
  if (eps <= 0.0) fail_input("eps must be positive");
  int n = space.size();
  CoveringReport rep;
  rep.eps = eps;

  std::vector<std::vector<int>> balls(n);
  for (int c = 0; c < n; ++c) balls[c] = space.ball_indices(c, eps);

  std::vector<char> covered(n, 0);
  int remaining = n;
  while (remaining > 0) {
    int best = -1, best_gain = 0;
    for (int c = 0; c < n; ++c) {
      int gain = 0;
      for (int v : balls[c]) gain += !covered[v];
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    for (int v : balls[best]) {
      remaining -= !covered[v];
      covered[v] = 1;
    }
    rep.greedy_centers.push_back(best);
  }
  rep.greedy_upper = int(rep.greedy_centers.size());

  std::vector<char> excluded(n, 0);  // within 2 eps of a chosen point
  for (int v = 0; v < n; ++v) {
    if (excluded[v]) continue;
    rep.packing_points.push_back(v);
    for (int w : space.ball_indices(v, 2.0 * eps)) excluded[w] = 1;
  }
  rep.packing_lower = int(rep.packing_points.size());
  return rep;
}

// Largest radius around which the ordered-generator lattice map Z^k -> G is
// injective on the L1 ball: r_f + 1 is the smallest s admitting a nonzero
// relation sum n_i e_i = 0 with sum |n_i| <= 2s. Found as the first radius
// where two distinct lattice points collide in G (each half of a weight-w
// relation sits in the ball of radius ceil(w/2)).
struct RadiusOfFreedomReport {
  int r_f = 0;
  std::vector<i64> relation;  // witness with sum |n_i| <= 2 (r_f + 1)
  i64 relation_weight = 0;
};

inline RadiusOfFreedomReport radius_of_freedom(const Group& g,
                                               const std::vector<Elem>& ordered_gens) {
  if (g.kind() != GroupKind::CyclicPower && g.kind() != GroupKind::AbelianQuotient)
    fail_input("radius of freedom needs an abelian group");
  int k = int(ordered_gens.size());
  if (k == 0) fail_input("empty generator list");
  std::vector<Elem> e(ordered_gens.size());
  for (int i = 0; i < k; ++i) e[i] = g.canon(ordered_gens[i]);

  std::map<Elem, std::vector<i64>> first_point;
  std::vector<std::pair<std::vector<i64>, Elem>> layer;
  layer.emplace_back(std::vector<i64>(k, 0), g.identity());
  first_point.emplace(g.identity(), std::vector<i64>(k, 0));
  i64 visited = 1;

  for (i64 radius = 1;; ++radius) {
    std::map<std::vector<i64>, Elem> next;
    for (const auto& [pt, el] : layer) {
      for (int i = 0; i < k; ++i) {
        for (int sgn : {+1, -1}) {
          std::vector<i64> q = pt;
          q[i] += sgn;
          i64 norm = 0;
          for (i64 c : q) norm += c < 0 ? -c : c;
          if (norm != radius) continue;
          if (next.count(q)) continue;
          Elem el2 = sgn > 0 ? g.mul(el, e[i]) : g.mul(el, g.inv(e[i]));
          next.emplace(std::move(q), std::move(el2));
        }
      }
    }
    // scan the finished layer for collisions with everything seen so far
    std::optional<std::pair<std::vector<i64>, std::vector<i64>>> hit;
    for (const auto& [pt, el] : next) {
      auto [it, fresh] = first_point.emplace(el, pt);
      if (!fresh && it->second != pt && !hit) hit = std::make_pair(it->second, pt);
    }
    if (hit) {
      RadiusOfFreedomReport rep;
      rep.r_f = int(radius) - 1;
      rep.relation.resize(size_t(k));
      for (int i = 0; i < k; ++i) {
        rep.relation[size_t(i)] = hit->first[size_t(i)] - hit->second[size_t(i)];
        rep.relation_weight += std::llabs(rep.relation[size_t(i)]);
      }
      return rep;
    }
    visited = checked_add(visited, i64(next.size()));
    if (visited > g.budget()) fail_budget("radius of freedom lattice search exceeds budget");
    layer.assign(next.begin(), next.end());
    if (layer.empty()) fail_input("lattice search exhausted without a relation");
  }
}

// Word lengths over one generating set compared with a weighted word length
// on a finite-index normal abelian subgroup A0. With B a transversal of A0,
// V the A0 part of the |B|-ball of U-words, and W the B-conjugates of V
// weighted by their U-length, every a in A0 must satisfy
// |a|_W <= |a|_U <= |a|_W + 2 |B| |U|^{|B|}.
struct WeightedWordReport {
  bool holds = false;
  i64 max_slack = 0;   // worst |a|_U - |a|_W
  i64 slack_bound = 0; // 2 |B| |U|^{|B|}
  size_t index = 0;    // |B|
  size_t a0_size = 0;
  size_t v_size = 0;
  size_t w_size = 0;
};

inline WeightedWordReport weighted_word_length(const Group& g, const GenSet& u,
                                               const std::vector<Elem>& a0_generators) {
  std::vector<Elem> a0_base = a0_generators;
  for (const Elem& e : a0_generators) a0_base.push_back(g.inv(e));
  std::vector<Elem> a0 = subgroup_closure(g, a0_base);

  for (const Elem& a : a0)
    for (const Elem& b : a0)
      if (!g.is_identity(g.commutator(a, b))) fail_input("subgroup A0 is not abelian");
  for (const Elem& s : u.gens)
    for (const Elem& a : a0)
      if (!set_contains(a0, g.conj(s, a))) fail_input("subgroup A0 is not normal");

  i64 order = g.order();
  if (order > g.budget()) fail_budget("group too large for exhaustive word lengths");
  if (order % i64(a0.size()) != 0) fail_input("subgroup order does not divide group order");
  WeightedWordReport rep;
  rep.index = size_t(order) / a0.size();
  rep.a0_size = a0.size();

  // |.|_U for the whole group by BFS from the identity
  std::unordered_map<Elem, i64, ElemHash> wlen;
  std::vector<Elem> queue{g.identity()};
  wlen.emplace(queue[0], 0);
  for (size_t head = 0; head < queue.size(); ++head) {
    Elem cur = queue[head];
    i64 d = wlen.at(cur);
    for (const Elem& s : u.gens) {
      Elem nxt = g.mul(cur, s);
      if (wlen.emplace(nxt, d + 1).second) queue.push_back(std::move(nxt));
    }
  }
  if (i64(wlen.size()) != order) fail_input("generating set does not generate the group");

  // transversal of A0, one representative per coset
  std::vector<Elem> reps;
  {
    std::unordered_map<Elem, char, ElemHash> claimed;
    for (const Elem& e : queue) {
      if (claimed.count(e)) continue;
      reps.push_back(e);
      for (const Elem& a : a0) claimed.emplace(g.mul(e, a), 1);
    }
  }

  // V: A0 elements of U-length at most |B|; W: their B-conjugates, keeping
  // the minimum weight when conjugates coincide.
  std::vector<Elem> v_set;
  for (const Elem& a : a0)
    if (wlen.at(a) <= i64(rep.index) && !g.is_identity(a)) v_set.push_back(a);
  rep.v_size = v_set.size();
  if (v_set.empty()) fail_input("no nontrivial A0 words inside the transversal ball");
  std::unordered_map<Elem, i64, ElemHash> w_weight;
  for (const Elem& b : reps)
    for (const Elem& v : v_set) {
      Elem w = g.conj(b, v);
      i64 cost = wlen.at(v);
      auto [it, fresh] = w_weight.emplace(w, cost);
      if (!fresh && it->second > cost) it->second = cost;
    }
  rep.w_size = w_weight.size();

  // weighted word length on A0 by Dijkstra
  std::unordered_map<Elem, size_t, ElemHash> a0_id;
  for (size_t i = 0; i < a0.size(); ++i) a0_id.emplace(a0[i], i);
  std::vector<i64> wdist(a0.size(), -1);
  using Pq = std::pair<i64, size_t>;
  std::priority_queue<Pq, std::vector<Pq>, std::greater<Pq>> pq;
  size_t start = a0_id.at(g.identity());
  wdist[start] = 0;
  pq.emplace(0, start);
  while (!pq.empty()) {
    auto [d, i] = pq.top();
    pq.pop();
    if (d != wdist[i]) continue;
    for (const auto& [w, cost] : w_weight) {
      size_t j = a0_id.at(g.mul(a0[i], w));
      if (wdist[j] < 0 || wdist[j] > d + cost) {
        wdist[j] = d + cost;
        pq.emplace(wdist[j], j);
      }
    }
  }

  i64 bound;
  try {
    i64 pow_u = 1;
    for (size_t i = 0; i < rep.index; ++i) pow_u = checked_mul(pow_u, i64(u.gens.size()));
    bound = checked_mul(2 * i64(rep.index), pow_u);
  } catch (const std::overflow_error&) {
    bound = std::numeric_limits<i64>::max();
  }
  rep.slack_bound = bound;
  rep.holds = true;
  for (size_t i = 0; i < a0.size(); ++i) {
    i64 lu = wlen.at(a0[i]);
    i64 lw = wdist[i];
    if (lw < 0 || lw > lu || lu - lw > bound) rep.holds = false;
    rep.max_slack = std::max(rep.max_slack, lu - lw);
  }
  return rep;
}

}  // namespace vtg

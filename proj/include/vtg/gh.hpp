#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "vtg/families.hpp"
#include "vtg/limit_models.hpp"
#include "vtg/metric.hpp"
#include "vtg/structure.hpp"

namespace vtg {

// Exponent at which ball growth R^(log 4 / log 3) separates tree-like spaces
// from one-dimensional ones; used as the default scale exponent in
// certificates.
inline double default_scale_exponent() { return std::log(3.0) / std::log(4.0); }

// Smallest eps for which a pair with source distance dx and image distance dy
// satisfies (1 - eps) dx - eps <= dy <= (1 + eps) dx + eps.
inline double pair_epsilon(double dx, double dy) {
  return std::abs(dx - dy) / (dx + 1.0);
}

// An eps-approximation extends to a correspondence (each model point is
// matched to a nearby image point) whose distortion is at most
// eps * diam + 3 eps, so half of that bounds the Gromov-Hausdorff distance.
inline double gh_upper_from_eps(double eps, double diam_x) {
  return eps * (diam_x + 3.0) / 2.0;
}

struct MapDistortionReport {
  double max_pair_error = 0.0;  // worst pair_epsilon over the checked pairs
  double codensity = 0.0;       // how far model points may sit from the image
  double eps = 0.0;             // max of the two
  double gh_upper = 0.0;
  i64 pairs_checked = 0;
  int worst_u = -1, worst_v = -1;
};

// Measures how closely a map into a model space preserves distances. dist_x
// and dist_y take two indices from `ids`; dist_y evaluates on the images.
template <class DistX, class DistY>
MapDistortionReport map_distortion(const std::vector<int>& ids, DistX&& dist_x,
                                   DistY&& dist_y, double codensity,
                                   double diam_x) {
  MapDistortionReport rep;
  rep.codensity = codensity;
  for (size_t i = 0; i < ids.size(); ++i) {
    for (size_t j = i + 1; j < ids.size(); ++j) {
      double e = pair_epsilon(dist_x(ids[i], ids[j]), dist_y(ids[i], ids[j]));
      ++rep.pairs_checked;
      if (e > rep.max_pair_error) {
        rep.max_pair_error = e;
        rep.worst_u = ids[i];
        rep.worst_v = ids[j];
      }
    }
  }
  rep.eps = std::max(rep.max_pair_error, rep.codensity);
  rep.gh_upper = gh_upper_from_eps(rep.eps, diam_x);
  return rep;
}

// ---------------------------------------------------------------------------
// Lower bounds

struct GhLowerReport {
  double value = 0.0;
  double diam_gap = 0.0;  // |diam X - diam Y| / 2
  double best_eps = 0.0;  // largest eps certified by packing vs covering
};

// If X packs more points at pairwise distance > 4 eps than Y can be covered
// with by eps-balls, no correspondence of distortion < 2 eps exists, so the
// distance is at least eps. Scan a grid of eps values both ways.
inline GhLowerReport gh_lower_bounds(const FiniteMetricSpace& x,
                                     const FiniteMetricSpace& y) {
  GhLowerReport rep;
  double dmax = std::max(x.diameter(), y.diameter());
  rep.diam_gap = std::abs(x.diameter() - y.diameter()) / 2.0;
  rep.value = rep.diam_gap;
  for (int j = 20; j >= 1; --j) {
    double eps = double(j) / 40.0 * dmax;
    if (eps <= rep.best_eps) break;
    auto separates = [&](const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
      return covering_number(a, 2.0 * eps).packing_lower >
             covering_number(b, eps).greedy_upper;
    };
    if (separates(x, y) || separates(y, x)) {
      rep.best_eps = eps;
      break;
    }
  }
  rep.value = std::max(rep.value, rep.best_eps);
  return rep;
}

// ---------------------------------------------------------------------------
// Exact distance on small spaces

// Distortion of the correspondence pairing every x with f[x] and g[y] with y.
inline double correspondence_distortion(const FiniteMetricSpace& x,
                                        const FiniteMetricSpace& y,
                                        const std::vector<int>& f,
                                        const std::vector<int>& g) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < x.size(); ++i) pairs.push_back({i, f[size_t(i)]});
  for (int j = 0; j < y.size(); ++j) pairs.push_back({g[size_t(j)], j});
  double dis = 0.0;
  for (size_t a = 0; a < pairs.size(); ++a)
    for (size_t b = a + 1; b < pairs.size(); ++b)
      dis = std::max(dis, std::abs(x.dist(pairs[a].first, pairs[b].first) -
                                   y.dist(pairs[a].second, pairs[b].second)));
  return dis;
}

struct BruteForceResult {
  double value = 0.0;  // exact Gromov-Hausdorff distance
  std::vector<int> f;  // witness maps realizing the optimum
  std::vector<int> g;
  i64 nodes = 0;
};

namespace detail {

struct BruteSearch {
  const FiniteMetricSpace& x;
  const FiniteMetricSpace& y;
  int nx, ny;
  std::vector<int> f, g;
  std::vector<int> best_f, best_g;
  double best;
  i64 nodes = 0;
  i64 node_budget;

  BruteSearch(const FiniteMetricSpace& x_, const FiniteMetricSpace& y_, i64 budget)
      : x(x_), y(y_), nx(x_.size()), ny(y_.size()),
        f(size_t(nx), 0), g(size_t(ny), 0), best(0), node_budget(budget) {}

  // Distortion of the pair added at depth k against all earlier pairs. Items
  // 0..nx-1 are (i, f[i]); items nx.. are (g[j], j).
  double delta_against(int k, int xa, int yb, double cur) const {
    double m = cur;
    for (int t = 0; t < k; ++t) {
      int xa2, yb2;
      if (t < nx) { xa2 = t; yb2 = f[size_t(t)]; }
      else { xa2 = g[size_t(t - nx)]; yb2 = t - nx; }
      m = std::max(m, std::abs(x.dist(xa, xa2) - y.dist(yb, yb2)));
      if (m >= best) return m;
    }
    return m;
  }

  void dfs(int k, double cur) {
    if (++nodes > node_budget) fail_budget("correspondence search exceeded its node budget");
    if (k == nx + ny) {
      best = cur;
      best_f = f;
      best_g = g;
      return;
    }
    if (k < nx) {
      for (int b = 0; b < ny; ++b) {
        double m = delta_against(k, k, b, cur);
        if (m >= best) continue;
        f[size_t(k)] = b;
        dfs(k + 1, m);
      }
    } else {
      int j = k - nx;
      for (int a = 0; a < nx; ++a) {
        double m = delta_against(k, a, j, cur);
        if (m >= best) continue;
        g[size_t(j)] = a;
        dfs(k + 1, m);
      }
    }
  }
};

}  // namespace detail

// Exact Gromov-Hausdorff distance by branch-and-bound over all map pairs
// (f: X -> Y, g: Y -> X); the union of their graphs ranges over enough
// correspondences to realize the minimum distortion.
inline BruteForceResult gh_bruteforce(const FiniteMetricSpace& x,
                                      const FiniteMetricSpace& y,
                                      i64 node_budget = 200'000'000) {
  if (x.size() + y.size() > 14)
    fail_input("exact search is limited to 14 points total");
  detail::BruteSearch s(x, y, node_budget);
  // Proportional index maps seed the bound so pruning bites immediately.
  std::vector<int> f0(size_t(s.nx)), g0(size_t(s.ny));
  for (int i = 0; i < s.nx; ++i) f0[size_t(i)] = std::min(s.ny - 1, (i * s.ny) / s.nx);
  for (int j = 0; j < s.ny; ++j) g0[size_t(j)] = std::min(s.nx - 1, (j * s.nx) / s.ny);
  s.best = correspondence_distortion(x, y, f0, g0);
  s.best_f = f0;
  s.best_g = g0;
  s.best += 1e-12;  // let the search reconfirm the seeded value
  s.dfs(0, 0.0);
  BruteForceResult out;
  out.f = s.best_f;
  out.g = s.best_g;
  out.nodes = s.nodes;
  out.value = correspondence_distortion(x, y, out.f, out.g) / 2.0;
  return out;
}

// ---------------------------------------------------------------------------
// Circle certificates

struct CircleCertificate {
  double c = 0.0;     // scale exponent used for the length gate
  i64 diameter = 0;
  i64 cycle_length = 0;     // L
  i64 tube_radius = 0;      // h: worst distance from a vertex to the cycle
  double bound = 0.0;       // ((2h + 1) + |L/2 - D|) / D + 2 / L
  bool volume_small = false;  // |X| below the planarity volume gate
  double volume_threshold = 0.0;
  NetDecomposition net;
  GeodesicCycle loop;
};

// Certifies that a graph is Gromov-Hausdorff close to a circle after
// rescaling by its diameter. Stages: decompose into a cyclic net, extract a
// certified geodesic cycle winding once around it, then measure how tightly
// the cycle fills the graph. Throws a certification error when a stage fails.
inline CircleCertificate circle_certificate(const LabeledGraph& g,
                                            double c = default_scale_exponent()) {
  CircleCertificate cert;
  cert.c = c;
  cert.diameter = diameter(g);
  double dd = double(cert.diameter);
  int max_deg = 0;
  for (int v = 0; v < g.n; ++v) max_deg = std::max(max_deg, g.degree(v));
  cert.volume_threshold =
      std::sqrt(3.0) / 576.0 / double(std::max(1, max_deg)) * std::pow(dd, 2.0 - c);
  cert.volume_small = double(g.n) < cert.volume_threshold;
  cert.net = net_decomposition(g, 1.0);
  if (!cert.net.h_is_cycle)
    fail_certification("net decomposition is not a single cycle");
  cert.loop = shortest_winding_loop(g, cert.net);
  if (!cert.loop.certified)
    fail_certification("winding loop is not a geodesic cycle");
  cert.cycle_length = cert.loop.length;
  double dc = std::pow(dd, c);
  if (double(cert.cycle_length) <= dc)
    fail_certification("winding loop is too short for the diameter");
  std::vector<i64> to_loop = dist_to_set(g, cert.loop.vertices);
  for (int v = 0; v < g.n; ++v) cert.tube_radius = std::max(cert.tube_radius, to_loop[size_t(v)]);
  cert.bound = (double(2 * cert.tube_radius + 1) +
                std::abs(double(cert.cycle_length) / 2.0 - dd)) / dd +
               2.0 / double(cert.cycle_length);
  return cert;
}

// ---------------------------------------------------------------------------
// Family convergence tables

struct ConvergenceOptions {
  int sample_vertices = 120;   // pair sample size for large graphs
  int exhaustive_below = 450;  // use all vertices when the graph is smaller
  unsigned seed = kDefaultSeed;
  i64 budget = kDefaultBudget;
  const PolyhedralNorm* torus_norm = nullptr;       // replaces the l1 norm when set
  const std::vector<Elem>* gens_override = nullptr;  // replaces default generators
};

inline std::vector<int> pick_sample(int n, int want, unsigned seed) {
  std::vector<int> ids(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) ids[size_t(i)] = i;
  if (n <= want) return ids;
  std::mt19937 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(size_t(want));
  std::sort(ids.begin(), ids.end());
  return ids;
}

// One row of the rescaled comparison against the family's limit model.
inline ConvergenceRow convergence_row(const FamilySpec& f, i64 n,
                                      const ConvergenceOptions& opt,
                                      FiberRow* fiber_out = nullptr) {
  FamilyBuild b = build_family(f, n, opt.budget, opt.gens_override);
  ConvergenceRow row;
  row.n = n;
  row.size = b.graph.n;
  row.diameter = diameter(b.graph);
  ComparisonMap cm = comparison_map(f, b, n);
  double diam = double(row.diameter);
  std::vector<int> ids =
      pick_sample(b.graph.n,
                  b.graph.n <= opt.exhaustive_below ? b.graph.n : opt.sample_vertices,
                  opt.seed + unsigned(n));
  std::vector<std::vector<int>> rows;  // hop distances from each sampled vertex
  rows.reserve(ids.size());
  for (int v : ids) rows.push_back(bfs_dist_raw(b.graph, v));
  std::vector<int> pos_of(size_t(b.graph.n), -1);
  for (size_t i = 0; i < ids.size(); ++i) pos_of[size_t(ids[i])] = int(i);
  auto dist_x = [&](int u, int v) {
    return double(rows[size_t(pos_of[size_t(u)])][size_t(v)]) / diam;
  };
  MapDistortionReport rep;
  if (cm.model == ModelKind::circle) {
    auto dist_y = [&](int u, int v) {
      double d = std::abs(cm.circle_pos[size_t(u)] - cm.circle_pos[size_t(v)]);
      return std::min(d, 2.0 - d);
    };
    // Image positions are evenly spaced, so codensity is half the gap
    // between neighbours over the model diameter: (2/n)/2 / 1.
    rep = map_distortion(ids, dist_x, dist_y, 1.0 / double(b.graph.n), 1.0);
  } else if (cm.model == ModelKind::l1_torus) {
    PolyhedralNorm l1 = norm_from_generators([&] {
      std::vector<RVec> us;
      for (int i = 0; i < cm.torus_dim; ++i) {
        RVec e(size_t(cm.torus_dim), Rat(0));
        e[size_t(i)] = Rat(1);
        us.push_back(e);
      }
      return us;
    }());
    const PolyhedralNorm& norm = opt.torus_norm != nullptr ? *opt.torus_norm : l1;
    if (norm.m != cm.torus_dim) fail_input("norm dimension does not match the family");
    TorusModel model = standard_torus(norm);
    std::vector<std::vector<double>> raw(ids.size(), std::vector<double>(ids.size(), 0.0));
    double raw_max = 0.0;
    for (size_t i = 0; i < ids.size(); ++i)
      for (size_t j = i + 1; j < ids.size(); ++j) {
        double d = torus_distance(model, cm.torus_pos[size_t(ids[i])],
                                  cm.torus_pos[size_t(ids[j])])
                       .to_double();
        raw[i][j] = raw[j][i] = d;
        raw_max = std::max(raw_max, d);
      }
    // The l1 model has diameter dim/2 exactly; a custom norm is rescaled by
    // the widest sampled image distance instead.
    double model_diam =
        opt.torus_norm != nullptr ? raw_max : double(cm.torus_dim) / 2.0;
    if (model_diam <= 0.0) fail_input("degenerate torus image");
    auto dist_y = [&](int u, int v) {
      return raw[size_t(pos_of[size_t(u)])][size_t(pos_of[size_t(v)])] / model_diam;
    };
    // The image is the full residue grid; any point of a grid cell is within
    // a half-cell sign corner of the nearest image point.
    double half_corner = 0.0;
    for (int signs = 0; signs < (1 << cm.torus_dim); ++signs) {
      RVec v;
      for (int i = 0; i < cm.torus_dim; ++i)
        v.push_back(Rat((signs >> i) & 1 ? 1 : -1, 2 * n));
      half_corner = std::max(half_corner, norm.eval_d(v));
    }
    rep = map_distortion(ids, dist_x, dist_y, half_corner / model_diam, 1.0);
  } else {
    fail_input("family has no limit model to compare against");
  }
  row.max_error = rep.max_pair_error;
  row.gh_upper = rep.gh_upper;
  if (fiber_out != nullptr && f.kind == FamilyKind::heisenberg) {
    fiber_out->n = n;
    fiber_out->fiber_diameter = heisenberg_fiber_diameter(b, n);
    fiber_out->ratio_to_sqrt_n = double(fiber_out->fiber_diameter) / std::sqrt(double(n));
  }
  return row;
}

inline ConvergenceReport convergence_table(const FamilySpec& f,
                                           const std::vector<i64>& sizes,
                                           const ConvergenceOptions& opt = {}) {
  ConvergenceReport rep;
  rep.family = f.name();
  for (i64 n : sizes) {
    FiberRow fiber;
    ConvergenceRow row = convergence_row(f, n, opt,
                                         f.kind == FamilyKind::heisenberg ? &fiber : nullptr);
    rep.rows.push_back(row);
    if (f.kind == FamilyKind::heisenberg) rep.fibers.push_back(fiber);
  }
  return rep;
}

struct CertifyReport {
  ConvergenceReport table;
  double tol = 0.0;
  double final_upper = 0.0;
  bool pass = false;
  std::string fail_stage;  // empty when the certification passed
  bool has_certificate = false;
  CircleCertificate certificate;  // for circle-model families, largest size
};

// Full convergence certification: the rescaled family must approach its limit
// model with weakly decreasing distance bounds ending below the tolerance,
// and circle-model families must additionally carry a structural certificate
// at the largest size.
inline CertifyReport certify_family(const FamilySpec& f, const std::vector<i64>& sizes,
                                    double tol, const ConvergenceOptions& opt = {}) {
  if (sizes.empty()) fail_input("certification needs at least one size");
  CertifyReport rep;
  rep.tol = tol;
  rep.table = convergence_table(f, sizes, opt);
  const auto& rows = rep.table.rows;
  rep.final_upper = rows.back().gh_upper;
  for (size_t i = 0; i + 1 < rows.size(); ++i) {
    if (rows[i + 1].gh_upper > rows[i].gh_upper + 1e-12) {
      rep.fail_stage = "distance bounds do not decrease along the family";
      return rep;
    }
  }
  if (rep.final_upper > tol) {
    rep.fail_stage = "final distance bound exceeds the tolerance";
    return rep;
  }
  if (family_model(f.kind) == ModelKind::circle) {
    FamilyBuild b = build_family(f, sizes.back(), opt.budget, opt.gens_override);
    try {
      rep.certificate = circle_certificate(b.graph);
      rep.has_certificate = true;
    } catch (const VtgError& e) {
      if (e.kind() != ErrorKind::certification) throw;
      rep.fail_stage = e.what();
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

}  // namespace vtg

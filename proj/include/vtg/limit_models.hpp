#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vtg/error.hpp"
#include "vtg/rational.hpp"

namespace vtg {

// Norm whose unit ball is the convex hull of a symmetric generator set.
// Evaluation runs two independent routes: a primal linear program over
// generator bases, and for dimensions up to 3 a facet gauge.
struct PolyhedralNorm {
  int m = 0;
  std::vector<RVec> vertices;  // symmetric closure, deduplicated
  std::vector<RVec> facets;    // normals a with <a, x> <= 1 on the ball (m <= 3)

  // min sum |t_i| with sum t_i u_i = x: optimum sits on an independent
  // m-subset of the signed generators with non-negative coefficients.
  Rat eval(const RVec& x) const {
    if (int(x.size()) != m) fail_input("norm argument has wrong dimension");
    if (rvec_is_zero(x)) return Rat(0);
    int v = int(vertices.size());
    std::vector<int> idx(size_t(m), 0);
    std::optional<Rat> best;
    // enumerate m-subsets of vertex indices
    for (int i = 0; i < m; ++i) idx[size_t(i)] = i;
    while (true) {
      std::vector<RVec> mat(static_cast<size_t>(m), RVec(size_t(m)));
      for (int col = 0; col < m; ++col)
        for (int row = 0; row < m; ++row)
          mat[size_t(row)][size_t(col)] = vertices[size_t(idx[size_t(col)])][size_t(row)];
      RVec rhs = x, sol;
      if (rat_solve(std::move(mat), &rhs, &sol) == m &&
          std::all_of(sol.begin(), sol.end(),
                      [](const Rat& t) { return !(t < Rat(0)); })) {
        Rat total(0);
        for (const Rat& t : sol) total += t;
        if (!best || total < *best) best = total;
      }
      int pos = m - 1;
      while (pos >= 0 && idx[size_t(pos)] == v - m + pos) --pos;
      if (pos < 0) break;
      ++idx[size_t(pos)];
      for (int j = pos + 1; j < m; ++j) idx[size_t(j)] = idx[size_t(j - 1)] + 1;
    }
    if (!best) fail_input("norm evaluation infeasible: generators do not span");
    return *best;
  }

  // max over facet normals of <a, x>; exact and independent of eval().
  Rat eval_gauge(const RVec& x) const {
    if (facets.empty()) fail_input("facet gauge unavailable in this dimension");
    Rat best(0);
    for (const RVec& a : facets) {
      Rat d = rvec_dot(a, x);
      if (best < d) best = d;
    }
    return best;
  }

  double eval_d(const RVec& x) const { return eval(x).to_double(); }
};

namespace detail {

// Convex hull of 2D rational points, counterclockwise, no duplicates.
inline std::vector<RVec> hull2(std::vector<RVec> pts) {
  std::sort(pts.begin(), pts.end(), [](const RVec& a, const RVec& b) {
    if (a[0] < b[0]) return true;
    if (b[0] < a[0]) return false;
    return a[1] < b[1];
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  auto cross = [](const RVec& o, const RVec& a, const RVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<RVec> h;
  for (const RVec& p : pts) {  // lower
    while (h.size() >= 2 && !(Rat(0) < cross(h[h.size() - 2], h.back(), p))) h.pop_back();
    h.push_back(p);
  }
  size_t lower = h.size() + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper
    while (h.size() >= lower && !(Rat(0) < cross(h[h.size() - 2], h.back(), *it)))
      h.pop_back();
    h.push_back(*it);
  }
  h.pop_back();
  return h;
}

inline std::vector<RVec> facets_of(const std::vector<RVec>& vertices, int m) {
  std::vector<RVec> facets;
  if (m == 1) {
    Rat r(0);
    for (const RVec& v : vertices) r = std::max(r, rat_abs(v[0]));
    facets.push_back({Rat(1) / r});
    facets.push_back({-(Rat(1) / r)});
    return facets;
  }
  if (m == 2) {
    std::vector<RVec> h = hull2(vertices);
    for (size_t i = 0; i < h.size(); ++i) {
      const RVec& p = h[i];
      const RVec& q = h[(i + 1) % h.size()];
      std::vector<RVec> mat = {{p[0], p[1]}, {q[0], q[1]}};
      RVec rhs = {Rat(1), Rat(1)}, a;
      if (rat_solve(std::move(mat), &rhs, &a) == 2) facets.push_back(a);
    }
    return facets;
  }
  if (m == 3) {
    int v = int(vertices.size());
    for (int i = 0; i < v; ++i)
      for (int j = i + 1; j < v; ++j)
        for (int k = j + 1; k < v; ++k) {
          const RVec &p = vertices[size_t(i)], &q = vertices[size_t(j)],
                     &r = vertices[size_t(k)];
          RVec u = rvec_sub(q, p), w = rvec_sub(r, p);
          RVec n = {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2],
                    u[0] * w[1] - u[1] * w[0]};
          if (rvec_is_zero(n)) continue;
          Rat c = rvec_dot(n, p);
          if (c.is_zero()) continue;  // plane through origin cannot support the ball
          if (c < Rat(0)) {
            for (Rat& t : n) t = -t;
            c = -c;
          }
          bool face = true;
          for (const RVec& x : vertices)
            if (c < rvec_dot(n, x)) {
              face = false;
              break;
            }
          if (!face) continue;
          RVec a = rvec_scale(Rat(1) / c, n);
          if (!std::count(facets.begin(), facets.end(), a)) facets.push_back(a);
        }
    return facets;
  }
  return facets;  // higher dimensions: gauge route unavailable
}

}  // namespace detail

inline PolyhedralNorm norm_from_generators(const std::vector<RVec>& u) {
  if (u.empty()) fail_input("empty generator list");
  PolyhedralNorm norm;
  norm.m = int(u[0].size());
  for (const RVec& v : u) {
    if (int(v.size()) != norm.m) fail_input("mixed generator dimensions");
    if (rvec_is_zero(v)) continue;
    RVec neg = rvec_scale(Rat(-1), v);
    if (!std::count(norm.vertices.begin(), norm.vertices.end(), v))
      norm.vertices.push_back(v);
    if (!std::count(norm.vertices.begin(), norm.vertices.end(), neg))
      norm.vertices.push_back(neg);
  }
  if (rat_rank(norm.vertices) != norm.m)
    fail_input("degenerate norm: generators do not span the space");
  norm.facets = detail::facets_of(norm.vertices, norm.m);
  return norm;
}

// Flat torus R^m / lattice with a polyhedral norm. Distances minimize the
// norm over lattice translates inside a window guaranteed to contain the
// optimum (norm of the best translate is at most twice the base value).
struct TorusModel {
  int m = 0;
  std::vector<RVec> lattice;  // basis rows
  PolyhedralNorm norm;
};

inline TorusModel torus_model(std::vector<RVec> lattice, PolyhedralNorm norm) {
  TorusModel t;
  t.m = norm.m;
  if (int(lattice.size()) != t.m) fail_input("lattice basis must be square");
  if (rat_rank(lattice) != t.m) fail_input("lattice basis is singular");
  t.lattice = std::move(lattice);
  t.norm = std::move(norm);
  return t;
}

inline TorusModel standard_torus(const PolyhedralNorm& norm) {
  std::vector<RVec> basis(size_t(norm.m), RVec(size_t(norm.m), Rat(0)));
  for (int i = 0; i < norm.m; ++i) basis[size_t(i)][size_t(i)] = Rat(1);
  return torus_model(std::move(basis), norm);
}

inline Rat torus_distance(const TorusModel& t, const RVec& x, const RVec& y) {
  RVec diff = rvec_sub(x, y);
  Rat base = t.norm.eval(diff);
  if (base.is_zero()) return Rat(0);

  // Euclidean reach: norm(best translate) <= 2 base, and Euclid <= c1 * norm
  // with c1 the largest Euclidean length of a unit-ball vertex.
  double c1 = 0.0;
  for (const RVec& v : t.norm.vertices) {
    double s = 0.0;
    for (const Rat& c : v) s += c.to_double() * c.to_double();
    c1 = std::max(c1, std::sqrt(s));
  }
  double reach = 2.0 * base.to_double() * c1 * 1.001 + 1e-9;

  // coefficient bounds from the inverse basis rows
  std::vector<i64> w(size_t(t.m));
  for (int i = 0; i < t.m; ++i) {
    std::vector<RVec> mat(size_t(t.m), RVec(size_t(t.m)));
    for (int row = 0; row < t.m; ++row)
      for (int col = 0; col < t.m; ++col)
        mat[size_t(row)][size_t(col)] = t.lattice[size_t(col)][size_t(row)];
    RVec rhs(size_t(t.m), Rat(0)), sol;
    rhs[size_t(i)] = Rat(1);
    if (rat_solve(std::move(mat), &rhs, &sol) != t.m)
      fail_input("lattice basis is singular");
    double len = 0.0;
    for (const Rat& c : sol) len += c.to_double() * c.to_double();
    w[size_t(i)] = i64(std::ceil(std::sqrt(len) * reach)) + 1;
  }

  Rat best = base;
  std::vector<i64> z(size_t(t.m), 0);
  for (int i = 0; i < t.m; ++i) z[size_t(i)] = -w[size_t(i)];
  while (true) {
    RVec cand = diff;
    for (int i = 0; i < t.m; ++i)
      cand = rvec_add(cand, rvec_scale(Rat(z[size_t(i)]), t.lattice[size_t(i)]));
    Rat val = t.norm.eval(cand);
    if (val < best) best = val;
    int pos = 0;
    while (pos < t.m && z[size_t(pos)] == w[size_t(pos)]) {
      z[size_t(pos)] = -w[size_t(pos)];
      ++pos;
    }
    if (pos == t.m) break;
    ++z[size_t(pos)];
  }
  return best;
}

// Circle of circumference 2 (diameter 1), the scaling limit of cycles.
struct CircleModel {
  double circumference = 2.0;
  double dist(double s, double t) const {
    double d = std::fmod(std::fabs(s - t), circumference);
    return std::min(d, circumference - d);
  }
  std::vector<double> sample(int k) const {
    if (k < 1) fail_input("sample count must be positive");
    std::vector<double> pts(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) pts[size_t(i)] = circumference * double(i) / double(k);
    return pts;
  }
};

struct ConvergenceRow {
  i64 n = 0;
  i64 size = 0;
  i64 diameter = 0;
  double max_error = 0.0;
  double gh_upper = 0.0;
};

struct FiberRow {
  i64 n = 0;
  i64 fiber_diameter = 0;
  double ratio_to_sqrt_n = 0.0;
};

struct ConvergenceReport {
  std::string family;
  std::vector<ConvergenceRow> rows;
  std::vector<FiberRow> fibers;  // central-fiber statistics where defined
};

// Exact Hausdorff gap between an n-fold sumset and its convex hull in the
// plane. Candidate farthest points are Voronoi vertices (circumcenters of
// sumset triples) inside the hull and bisector crossings of hull edges; the
// comparison is exact on squared distances.
struct SumsetGapReport {
  double gap = 0.0;
  Rat gap_sq = Rat(0);
  double diam_k = 0.0;
  double bound = 0.0;  // (m + 1) * diam(K)
  size_t sumset_size = 0;
  bool pass = false;
};

inline SumsetGapReport sumset_convexity_gap(const std::vector<RVec>& k_set, int n,
                                            i64 budget = 2'000'000) {
  if (k_set.empty() || int(k_set[0].size()) != 2)
    fail_input("sumset gap is implemented for the plane");
  bool has_origin = false;
  for (const RVec& p : k_set) {
    if (rvec_is_zero(p)) has_origin = true;
    RVec neg = rvec_scale(Rat(-1), p);
    if (!std::count(k_set.begin(), k_set.end(), neg))
      fail_input("point set is not symmetric");
  }
  if (!has_origin) fail_input("point set must contain the origin");
  if (n < 1) fail_input("sumset exponent must be positive");

  std::set<std::pair<Rat, Rat>> cur;
  cur.emplace(Rat(0), Rat(0));
  for (int step = 0; step < n; ++step) {
    std::set<std::pair<Rat, Rat>> next;
    for (const auto& [x, y] : cur)
      for (const RVec& p : k_set) {
        next.emplace(x + p[0], y + p[1]);
        if (i64(next.size()) > budget) fail_budget("sumset enumeration exceeds budget");
      }
    cur = std::move(next);
  }
  std::vector<RVec> pts;
  for (const auto& [x, y] : cur) pts.push_back({x, y});

  SumsetGapReport rep;
  rep.sumset_size = pts.size();
  Rat diam2(0);
  for (size_t i = 0; i < k_set.size(); ++i)
    for (size_t j = i + 1; j < k_set.size(); ++j)
      diam2 = std::max(diam2, rvec_dist2(k_set[i], k_set[j]));
  rep.diam_k = std::sqrt(diam2.to_double());
  rep.bound = 3.0 * rep.diam_k;
  Rat reach2 = Rat(4 * 9) * diam2;  // (2 * bound)^2 pair prefilter

  std::vector<RVec> hull = detail::hull2(pts);
  auto cross = [](const RVec& o, const RVec& a, const RVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  auto inside = [&](const RVec& c) {
    for (size_t i = 0; i < hull.size(); ++i)
      if (cross(hull[i], hull[(i + 1) % hull.size()], c) < Rat(0)) return false;
    return true;
  };
  auto min_dist2 = [&](const RVec& c) {
    Rat best = rvec_dist2(c, pts[0]);
    for (size_t i = 1; i < pts.size(); ++i) best = std::min(best, rvec_dist2(c, pts[i]));
    return best;
  };

  Rat gap2(0);
  size_t np = pts.size();
  for (size_t i = 0; i < np; ++i)
    for (size_t j = i + 1; j < np; ++j) {
      if (reach2 < rvec_dist2(pts[i], pts[j])) continue;
      for (size_t l = j + 1; l < np; ++l) {
        if (reach2 < rvec_dist2(pts[i], pts[l])) continue;
        if (reach2 < rvec_dist2(pts[j], pts[l])) continue;
        // circumcenter: 2 (q - p) . c = |q|^2 - |p|^2 etc.
        const RVec &p = pts[i], &q = pts[j], &r = pts[l];
        std::vector<RVec> mat = {
            {Rat(2) * (q[0] - p[0]), Rat(2) * (q[1] - p[1])},
            {Rat(2) * (r[0] - p[0]), Rat(2) * (r[1] - p[1])}};
        RVec rhs = {q[0] * q[0] + q[1] * q[1] - p[0] * p[0] - p[1] * p[1],
                    r[0] * r[0] + r[1] * r[1] - p[0] * p[0] - p[1] * p[1]};
        RVec c;
        if (rat_solve(std::move(mat), &rhs, &c) != 2) continue;
        if (!inside(c)) continue;
        gap2 = std::max(gap2, min_dist2(c));
      }
    }
  // bisector crossings of hull edges
  for (size_t e = 0; e < hull.size(); ++e) {
    const RVec& a = hull[e];
    const RVec& b = hull[(e + 1) % hull.size()];
    RVec ab = rvec_sub(b, a);
    for (size_t i = 0; i < np; ++i)
      for (size_t j = i + 1; j < np; ++j) {
        if (reach2 < rvec_dist2(pts[i], pts[j])) continue;
        // |a + t ab - p|^2 = |a + t ab - q|^2, linear in t
        RVec pq = rvec_sub(pts[j], pts[i]);
        Rat denom = Rat(2) * rvec_dot(ab, pq);
        if (denom.is_zero()) continue;
        Rat num = rvec_dot(pts[j], pts[j]) - rvec_dot(pts[i], pts[i]) -
                  Rat(2) * rvec_dot(a, pq);
        Rat tp = num / denom;
        if (tp < Rat(0) || Rat(1) < tp) continue;
        RVec c = rvec_add(a, rvec_scale(tp, ab));
        gap2 = std::max(gap2, min_dist2(c));
      }
  }
  rep.gap_sq = gap2;
  rep.gap = std::sqrt(gap2.to_double());
  rep.pass = rep.gap <= rep.bound + 1e-9;
  return rep;
}

}  // namespace vtg

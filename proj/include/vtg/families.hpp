#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "vtg/cayley.hpp"
#include "vtg/graph.hpp"
#include "vtg/group.hpp"
#include "vtg/limit_models.hpp"

namespace vtg {

constexpr unsigned kDefaultSeed = 2026;

enum class FamilyKind {
  cyclic,
  torus_k,
  shifted_base_k,
  heisenberg,
  dihedral,
  random_3_regular,
  custom_cayley,
};

struct FamilySpec {
  FamilyKind kind = FamilyKind::cyclic;
  int k = 1;               // rank for torus-k / shifted-base-k
  unsigned seed = kDefaultSeed;
  std::string file;        // custom-cayley graph path

  std::string name() const {
    switch (kind) {
      case FamilyKind::cyclic: return "cyclic";
      case FamilyKind::torus_k: return "torus-" + std::to_string(k);
      case FamilyKind::shifted_base_k: return "shifted-base-" + std::to_string(k);
      case FamilyKind::heisenberg: return "heisenberg";
      case FamilyKind::dihedral: return "dihedral";
      case FamilyKind::random_3_regular: return "random-3-regular";
      case FamilyKind::custom_cayley: return "custom-cayley";
    }
    return "?";
  }

  static FamilySpec parse(const std::string& text) {
    FamilySpec f;
    auto suffix_rank = [&](const std::string& prefix) {
      std::string tail = text.substr(prefix.size());
      if (tail.empty()) fail_input("family '" + text + "' needs a rank suffix");
      for (char ch : tail)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
          fail_input("bad rank in family '" + text + "'");
      int r = std::stoi(tail);
      if (r < 1 || r > 4) fail_input("family rank out of range [1,4]");
      return r;
    };
    if (text == "cyclic") {
      f.kind = FamilyKind::cyclic;
    } else if (text.rfind("torus-", 0) == 0) {
      f.kind = FamilyKind::torus_k;
      f.k = suffix_rank("torus-");
    } else if (text.rfind("shifted-base-", 0) == 0) {
      f.kind = FamilyKind::shifted_base_k;
      f.k = suffix_rank("shifted-base-");
    } else if (text == "heisenberg") {
      f.kind = FamilyKind::heisenberg;
    } else if (text == "dihedral") {
      f.kind = FamilyKind::dihedral;
    } else if (text == "random-3-regular") {
      f.kind = FamilyKind::random_3_regular;
    } else if (text.rfind("custom-cayley", 0) == 0) {
      f.kind = FamilyKind::custom_cayley;
      if (text.size() > 14 && text[13] == ':') f.file = text.substr(14);
    } else {
      fail_input("unknown family '" + text + "'");
    }
    return f;
  }
};

struct FamilyBuild {
  LabeledGraph graph;
  std::vector<Elem> vertex_elem;
  std::unordered_map<Elem, int, ElemHash> elem_id;
  bool group_backed = false;
  GroupSpec gspec;
};

// Configuration-sampled 3-regular graph from the pairing model: stubs are
// shuffled and matched, rejecting loops, parallel edges and disconnected
// outcomes. Deterministic for a fixed seed.
inline LabeledGraph random_regular_graph(i64 n, int degree, unsigned seed) {
  if (n < 4 || (n * degree) % 2 != 0) fail_input("bad size for a regular pairing");
  std::mt19937 rng(seed);
  for (int attempt = 0; attempt < 5000; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(size_t(n) * size_t(degree));
    for (i64 v = 0; v < n; ++v)
      for (int d = 0; d < degree; ++d) stubs.push_back(int(v));
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<int, int>> seen;
    bool ok = true;
    for (size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) ok = false;
      else if (!seen.emplace(std::min(u, v), std::max(u, v)).second) ok = false;
    }
    if (!ok) continue;
    LabeledGraph g;
    g.n = int(n);
    for (auto [u, v] : seen) g.add_edge(u, v);
    g.finalize();
    if (g.connected()) return g;
  }
  fail_input("pairing model failed to produce a simple connected graph");
}

inline FamilyBuild build_family(const FamilySpec& f, i64 n, i64 budget = kDefaultBudget,
                                const std::vector<Elem>* gens_override = nullptr) {
  FamilyBuild out;
  auto from_cayley = [&](const GroupSpec& spec, const std::vector<Elem>& raw) {
    Group g(spec, budget);
    GenSet s = make_genset(g, gens_override != nullptr ? *gens_override : raw);
    CayleyBuild cb = build_cayley(g, s, true);
    out.graph = std::move(cb.graph);
    out.vertex_elem = std::move(cb.vertex_elem);
    out.elem_id = std::move(cb.elem_id);
    out.group_backed = true;
    out.gspec = spec;
  };
  switch (f.kind) {
    case FamilyKind::cyclic:
      from_cayley(GroupSpec::cyclic_power(n, 1), {{1}});
      break;
    case FamilyKind::torus_k: {
      std::vector<Elem> gens;
      for (int i = 0; i < f.k; ++i) {
        Elem e(size_t(f.k), 0);
        e[size_t(i)] = 1;
        gens.push_back(e);
      }
      from_cayley(GroupSpec::cyclic_power(n, f.k), gens);
      break;
    }
    case FamilyKind::shifted_base_k: {
      i64 mod = 1;
      for (int i = 0; i < f.k; ++i) mod = checked_mul(mod, n);
      std::vector<Elem> gens;
      i64 p = 1;
      for (int i = 0; i < f.k; ++i) {
        gens.push_back({p});
        p = checked_mul(p, n);
      }
      from_cayley(GroupSpec::cyclic_power(mod, 1), gens);
      break;
    }
    case FamilyKind::heisenberg:
      from_cayley(GroupSpec::heisenberg(n), {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
      break;
    case FamilyKind::dihedral:
      from_cayley(GroupSpec::dihedral(n), {{1, 0}, {0, 1}});
      break;
    case FamilyKind::random_3_regular:
      if (gens_override != nullptr) fail_input("random family takes no generators");
      out.graph = random_regular_graph(n, 3, f.seed);
      break;
    case FamilyKind::custom_cayley: {
      if (gens_override != nullptr) fail_input("custom graph family takes no generators");
      if (f.file.empty()) fail_input("custom-cayley family needs a graph file");
      out.graph = read_vtg(f.file);
      if (i64(out.graph.n) != n)
        fail_input("custom graph has " + std::to_string(out.graph.n) +
                   " vertices, requested n = " + std::to_string(n));
      break;
    }
  }
  return out;
}

enum class ModelKind { none, circle, l1_torus };

inline ModelKind family_model(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::cyclic:
    case FamilyKind::random_3_regular:
    case FamilyKind::custom_cayley:
      return ModelKind::circle;
    case FamilyKind::torus_k:
    case FamilyKind::shifted_base_k:
    case FamilyKind::heisenberg:
      return ModelKind::l1_torus;
    case FamilyKind::dihedral:
      return ModelKind::none;
  }
  return ModelKind::none;
}

// Canonical vertex images in the limit model: cyclic residues become circle
// positions (circumference 2), abelian coordinates become torus residues/n,
// the shifted-base family splits digits, Heisenberg projects to (a, b)/n.
struct ComparisonMap {
  ModelKind model = ModelKind::none;
  int torus_dim = 0;
  std::vector<double> circle_pos;  // per vertex, in [0, 2)
  std::vector<RVec> torus_pos;     // per vertex, coordinates in [0, 1)
};

inline ComparisonMap comparison_map(const FamilySpec& f, const FamilyBuild& b, i64 n) {
  ComparisonMap m;
  m.model = family_model(f.kind);
  switch (f.kind) {
    case FamilyKind::cyclic:
      for (const Elem& e : b.vertex_elem)
        m.circle_pos.push_back(2.0 * double(e[0]) / double(n));
      break;
    case FamilyKind::random_3_regular:
    case FamilyKind::custom_cayley:
      for (int v = 0; v < b.graph.n; ++v)
        m.circle_pos.push_back(2.0 * double(v) / double(b.graph.n));
      break;
    case FamilyKind::torus_k:
      m.torus_dim = f.k;
      for (const Elem& e : b.vertex_elem) {
        RVec p;
        for (i64 c : e) p.push_back(Rat(c, n));
        m.torus_pos.push_back(std::move(p));
      }
      break;
    case FamilyKind::shifted_base_k: {
      m.torus_dim = f.k;
      for (const Elem& e : b.vertex_elem) {
        RVec p;
        i64 a = e[0];
        for (int i = 0; i < f.k; ++i) {
          p.push_back(Rat(a % n, n));
          a /= n;
        }
        m.torus_pos.push_back(std::move(p));
      }
      break;
    }
    case FamilyKind::heisenberg:
      m.torus_dim = 2;
      for (const Elem& e : b.vertex_elem)
        m.torus_pos.push_back({Rat(e[0], n), Rat(e[1], n)});
      break;
    case FamilyKind::dihedral:
      fail_input("no comparison map for the dihedral family");
  }
  return m;
}

// Graph distance from the identity vertex to the farthest central element
// (0, 0, c); by left translation this is the diameter of every central fiber.
inline i64 heisenberg_fiber_diameter(const FamilyBuild& b, i64 n) {
  if (!b.group_backed || b.gspec.kind != GroupKind::Heisenberg)
    fail_input("fiber diameter needs a heisenberg build");
  std::vector<int> dist = bfs_dist_raw(b.graph, 0);
  i64 best = 0;
  for (i64 c = 0; c < n; ++c) {
    int v = b.elem_id.at({0, 0, c});
    best = std::max(best, i64(dist[v]));
  }
  return best;
}

// Ball of radius `depth` in the 3-regular tree: the root has three children
// and every deeper vertex two more, so the sphere at radius k has 3 * 2^(k-1)
// vertices. depth 1 gives the star on four vertices.
inline LabeledGraph tree_ball_graph(int depth) {
  if (depth < 0) fail_input("tree depth must be nonnegative");
  LabeledGraph g;
  std::vector<int> frontier = {0};
  int next = 1;
  for (int level = 0; level < depth; ++level) {
    std::vector<int> children;
    int fanout = level == 0 ? 3 : 2;
    for (int v : frontier)
      for (int c = 0; c < fanout; ++c) {
        int child = next++;
        g.add_edge(v, child);
        children.push_back(child);
      }
    frontier = std::move(children);
  }
  g.n = next;
  g.finalize();
  return g;
}

struct CatalogEntry {
  std::string name;
  LabeledGraph graph;
};

inline LabeledGraph petersen_graph() {
  LabeledGraph g;
  g.n = 10;
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);            // outer cycle
    g.add_edge(5 + i, 5 + (i + 2) % 5);    // inner pentagram
    g.add_edge(i, 5 + i);                  // spokes
  }
  g.declared_transitive = true;
  g.finalize();
  return g;
}

inline LabeledGraph product_torus_graph(i64 n1, i64 n2) {
  Group g(GroupSpec::abelian_quotient({{n1, 0}, {0, n2}}));
  GenSet s = make_genset(g, {{1, 0}, {0, 1}});
  return build_cayley(g, s).graph;
}

// Bundled vertex-transitive graphs used by the detector property suites.
inline std::vector<CatalogEntry> vertex_transitive_catalog() {
  std::vector<CatalogEntry> cat;
  auto add_family = [&](const std::string& name, FamilyKind kind, i64 n, int k = 1) {
    FamilySpec f;
    f.kind = kind;
    f.k = k;
    cat.push_back({name, build_family(f, n).graph});
  };
  add_family("cycle-12", FamilyKind::cyclic, 12);
  add_family("cycle-40", FamilyKind::cyclic, 40);
  add_family("cycle-100", FamilyKind::cyclic, 100);
  cat.push_back({"prism-60", product_torus_graph(60, 2)});
  add_family("torus-12x12", FamilyKind::torus_k, 12, 2);
  cat.push_back({"torus-8x40", product_torus_graph(8, 40)});
  cat.push_back({"petersen", petersen_graph()});
  add_family("heisenberg-3", FamilyKind::heisenberg, 3);
  add_family("heisenberg-4", FamilyKind::heisenberg, 4);
  add_family("heisenberg-5", FamilyKind::heisenberg, 5);
  {
    Group g(GroupSpec::cyclic_power(5, 1));
    GenSet s = make_genset(g, {{1}, {2}});
    cat.push_back({"complete-5", build_cayley(g, s).graph});
  }
  return cat;
}

}  // namespace vtg

#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vtg/error.hpp"

namespace vtg {

// Undirected simple graph with optional vertex labels and a declared
// vertex-transitivity flag. Immutable once finalized; adjacency lists are
// sorted so every traversal (and therefore every geodesic tie-break) is
// deterministic.
struct LabeledGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted, unique
  std::vector<std::vector<int>> adj;
  std::vector<std::string> labels;  // empty, or one per vertex
  bool declared_transitive = false;

  void add_edge(int u, int v) {
    if (u == v) return;  // self-loops never affect distances
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
  }

  void finalize() {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    adj.assign(n, {});
    for (auto [u, v] : edges) {
      if (u < 0 || v >= n) fail_input("edge endpoint out of range");
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
  }

  int degree(int v) const { return int(adj[v].size()); }

  bool regular() const {
    for (int v = 1; v < n; ++v)
      if (degree(v) != degree(0)) return false;
    return true;
  }

  bool connected() const {
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    return count == n;
  }
};

inline bool graphs_equal(const LabeledGraph& a, const LabeledGraph& b) {
  return a.n == b.n && a.edges == b.edges && a.labels == b.labels &&
         a.declared_transitive == b.declared_transitive;
}

// Text format:
//   vtg 1 <num_vertices>
//   # transitive            (optional flag comment)
//   e <u> <v>               (0-based, u < v)
//   l <v> <label-string>    (optional)
inline void write_vtg(const LabeledGraph& g, std::ostream& os) {
  os << "vtg 1 " << g.n << "\n";
  if (g.declared_transitive) os << "# transitive\n";
  for (auto [u, v] : g.edges) os << "e " << u << " " << v << "\n";
  if (!g.labels.empty())
    for (int v = 0; v < g.n; ++v)
      if (!g.labels[v].empty()) os << "l " << v << " " << g.labels[v] << "\n";
}

inline LabeledGraph read_vtg(std::istream& is) {
  LabeledGraph g;
  std::string line;
  if (!std::getline(is, line)) fail_input("vtg: empty input");
  {
    std::istringstream hs(line);
    std::string magic;
    int version = 0;
    if (!(hs >> magic >> version >> g.n) || magic != "vtg" || version != 1 || g.n < 0)
      fail_input("vtg: bad header '" + line + "'");
  }
  bool any_label = false;
  std::vector<std::string> labels(g.n);
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("transitive") != std::string::npos) g.declared_transitive = true;
      continue;
    }
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "e") {
      int u, v;
      if (!(ls >> u >> v)) fail_input("vtg: bad edge line " + std::to_string(lineno));
      if (u < 0 || v < 0 || u >= g.n || v >= g.n || u >= v)
        fail_input("vtg: edge out of range or not u < v at line " + std::to_string(lineno));
      g.edges.emplace_back(u, v);
    } else if (tag == "l") {
      int v;
      if (!(ls >> v) || v < 0 || v >= g.n)
        fail_input("vtg: bad label line " + std::to_string(lineno));
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      labels[v] = rest;
      any_label = true;
    } else {
      fail_input("vtg: unknown record '" + tag + "' at line " + std::to_string(lineno));
    }
  }
  auto sorted = g.edges;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail_input("vtg: duplicate edge");
  if (any_label) g.labels = std::move(labels);
  g.finalize();
  return g;
}

inline LabeledGraph read_vtg(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_input("cannot open graph file '" + path + "'");
  return read_vtg(in);
}

inline void write_vtg(const LabeledGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail_input("cannot write graph file '" + path + "'");
  write_vtg(g, out);
}

}  // namespace vtg

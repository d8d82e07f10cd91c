#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "vtg/error.hpp"
#include "vtg/intops.hpp"

namespace vtg {

// Elements are canonical integer tuples, one encoding per variant:
//   CyclicPower(n,k)    k residues in [0,n)
//   AbelianQuotient     ambient vector reduced modulo the lattice (Hermite form)
//   Heisenberg(n)       (a,b,c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')
//   Dihedral(n)         (rotation in [0,n), flip in {0,1}), flip conjugates
//                       rotation to its inverse
//   Permutation(d)      image table of length d
using Elem = std::vector<i64>;

struct ElemHash {
  size_t operator()(const Elem& e) const {
    size_t h = 1469598103934665603ull;
    for (i64 v : e) {
      h ^= size_t(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

enum class GroupKind { CyclicPower, AbelianQuotient, Heisenberg, Dihedral, Permutation };

struct GroupSpec {
  GroupKind kind;
  i64 n = 0;                              // modulus / order parameter
  int k = 1;                              // cyclic power rank
  std::vector<std::vector<i64>> basis;    // lattice basis rows (AbelianQuotient)
  int degree = 0;                         // permutation degree
  std::vector<Elem> perm_gens;

  static GroupSpec cyclic_power(i64 n, int k) {
    if (n < 2 || k < 1) fail_input("cyclic power needs modulus >= 2, rank >= 1");
    GroupSpec s;
    s.kind = GroupKind::CyclicPower;
    s.n = n;
    s.k = k;
    return s;
  }
  static GroupSpec abelian_quotient(std::vector<std::vector<i64>> basis) {
    GroupSpec s;
    s.kind = GroupKind::AbelianQuotient;
    s.basis = std::move(basis);
    if (s.basis.empty()) fail_input("abelian quotient needs a nonempty basis");
    for (auto& row : s.basis)
      if (row.size() != s.basis.size()) fail_input("abelian quotient basis must be square");
    return s;
  }
  static GroupSpec heisenberg(i64 n) {
    if (n < 2) fail_input("heisenberg modulus must be >= 2");
    GroupSpec s;
    s.kind = GroupKind::Heisenberg;
    s.n = n;
    return s;
  }
  static GroupSpec dihedral(i64 n) {
    if (n < 2) fail_input("dihedral parameter must be >= 2");
    GroupSpec s;
    s.kind = GroupKind::Dihedral;
    s.n = n;
    return s;
  }
  static GroupSpec permutation(int degree, std::vector<Elem> gens) {
    if (degree < 1) fail_input("permutation degree must be >= 1");
    for (const Elem& p : gens) {
      if (int(p.size()) != degree) fail_input("permutation generator has wrong degree");
      std::vector<char> seen(degree, 0);
      for (i64 img : p) {
        if (img < 0 || img >= degree || seen[img]) fail_input("not a permutation");
        seen[img] = 1;
      }
    }
    GroupSpec s;
    s.kind = GroupKind::Permutation;
    s.degree = degree;
    s.perm_gens = std::move(gens);
    return s;
  }
};

// Row-style Hermite normal form of a full-rank integer matrix: upper
// triangular, positive diagonal, entries above each pivot reduced into
// [0, pivot). Row space is preserved, so reduction against the result is
// reduction modulo the original lattice.
inline std::vector<std::vector<i64>> hermite_normal_form(std::vector<std::vector<i64>> m) {
  int dim = int(m.size());
  for (int c = 0; c < dim; ++c) {
    // clear entries below the pivot by gcd steps
    for (;;) {
      int p = -1;
      for (int r = c; r < dim; ++r)
        if (m[r][c] != 0 && (p < 0 || std::abs(m[r][c]) < std::abs(m[p][c]))) p = r;
      if (p < 0) fail_input("lattice basis is singular");
      std::swap(m[p], m[c]);
      bool below = false;
      for (int r = c + 1; r < dim; ++r) {
        if (m[r][c] == 0) continue;
        i64 q = floor_div(m[r][c], m[c][c]);
        for (int j = 0; j < dim; ++j) m[r][j] = checked_add(m[r][j], checked_mul(-q, m[c][j]));
        if (m[r][c] != 0) below = true;
      }
      if (!below) break;
    }
    if (m[c][c] < 0)
      for (int j = 0; j < dim; ++j) m[c][j] = -m[c][j];
    for (int r = 0; r < c; ++r) {
      i64 q = floor_div(m[r][c], m[c][c]);
      if (q != 0)
        for (int j = 0; j < dim; ++j) m[r][j] = checked_add(m[r][j], checked_mul(-q, m[c][j]));
    }
  }
  return m;
}

constexpr i64 kDefaultBudget = 2'000'000;

class Group {
 public:
  explicit Group(GroupSpec spec, i64 budget = kDefaultBudget)
      : spec_(std::move(spec)), budget_(budget) {
    if (spec_.kind == GroupKind::AbelianQuotient) {
      hnf_ = hermite_normal_form(spec_.basis);
      i64 det = 1;
      for (size_t i = 0; i < hnf_.size(); ++i) det = checked_mul(det, hnf_[i][i]);
      order_ = det;
    }
  }

  const GroupSpec& spec() const { return spec_; }
  i64 budget() const { return budget_; }
  GroupKind kind() const { return spec_.kind; }

  int tuple_size() const {
    switch (spec_.kind) {
      case GroupKind::CyclicPower: return spec_.k;
      case GroupKind::AbelianQuotient: return int(spec_.basis.size());
      case GroupKind::Heisenberg: return 3;
      case GroupKind::Dihedral: return 2;
      case GroupKind::Permutation: return spec_.degree;
    }
    return 0;
  }

  Elem identity() const {
    Elem e(tuple_size(), 0);
    if (spec_.kind == GroupKind::Permutation)
      std::iota(e.begin(), e.end(), i64(0));
    return e;
  }

  Elem canon(Elem e) const {
    switch (spec_.kind) {
      case GroupKind::CyclicPower:
        for (i64& x : e) x = floor_mod(x, spec_.n);
        return e;
      case GroupKind::AbelianQuotient: {
        int dim = int(hnf_.size());
        for (int i = 0; i < dim; ++i) {
          i64 q = floor_div(e[i], hnf_[i][i]);
          if (q != 0)
            for (int j = 0; j < dim; ++j)
              e[j] = checked_add(e[j], checked_mul(-q, hnf_[i][j]));
        }
        return e;
      }
      case GroupKind::Heisenberg:
        for (i64& x : e) x = floor_mod(x, spec_.n);
        return e;
      case GroupKind::Dihedral:
        e[0] = floor_mod(e[0], spec_.n);
        e[1] = floor_mod(e[1], 2);
        return e;
      case GroupKind::Permutation:
        return e;
    }
    return e;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    switch (spec_.kind) {
      case GroupKind::CyclicPower:
      case GroupKind::AbelianQuotient: {
        Elem r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
        return canon(std::move(r));
      }
      case GroupKind::Heisenberg: {
        Elem r = {a[0] + b[0], a[1] + b[1], a[2] + b[2] + checked_mul(a[0], b[1])};
        return canon(std::move(r));
      }
      case GroupKind::Dihedral: {
        Elem r = {a[0] + (a[1] ? -b[0] : b[0]), a[1] + b[1]};
        return canon(std::move(r));
      }
      case GroupKind::Permutation: {
        Elem r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
        return r;
      }
    }
    return a;
  }

  Elem inv(const Elem& a) const {
    switch (spec_.kind) {
      case GroupKind::CyclicPower:
      case GroupKind::AbelianQuotient: {
        Elem r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
        return canon(std::move(r));
      }
      case GroupKind::Heisenberg:
        return canon({-a[0], -a[1], -a[2] + checked_mul(a[0], a[1])});
      case GroupKind::Dihedral:
        return a[1] ? a : canon({-a[0], 0});
      case GroupKind::Permutation: {
        Elem r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[a[i]] = i64(i);
        return r;
      }
    }
    return a;
  }

  bool is_identity(const Elem& a) const { return a == identity(); }

  Elem conj(const Elem& x, const Elem& a) const {  // x a x^-1
    return mul(mul(x, a), inv(x));
  }

  Elem commutator(const Elem& x, const Elem& y) const {  // x y x^-1 y^-1
    return mul(mul(x, y), mul(inv(x), inv(y)));
  }

  i64 order() const {
    switch (spec_.kind) {
      case GroupKind::CyclicPower: {
        i64 o = 1;
        for (int i = 0; i < spec_.k; ++i) o = checked_mul(o, spec_.n);
        return o;
      }
      case GroupKind::AbelianQuotient: return order_;
      case GroupKind::Heisenberg: return checked_mul(checked_mul(spec_.n, spec_.n), spec_.n);
      case GroupKind::Dihedral: return 2 * spec_.n;
      case GroupKind::Permutation: return i64(elements().size());
    }
    return 0;
  }

  // Full element list in a deterministic order. For Permutation this is the
  // closure of the defining generators; for the other variants the canonical
  // boxes are enumerated directly.
  const std::vector<Elem>& elements() const {
    if (!elems_.empty()) return elems_;
    switch (spec_.kind) {
      case GroupKind::CyclicPower:
      case GroupKind::Heisenberg: {
        int dim = tuple_size();
        std::vector<i64> radix(dim, spec_.n);
        enumerate_box(radix);
        break;
      }
      case GroupKind::AbelianQuotient: {
        std::vector<i64> radix;
        for (size_t i = 0; i < hnf_.size(); ++i) radix.push_back(hnf_[i][i]);
        std::vector<i64> cur(radix.size(), 0);
        box_rec(radix, cur, 0, /*canonicalize=*/true);
        break;
      }
      case GroupKind::Dihedral: {
        for (i64 f = 0; f < 2; ++f)
          for (i64 r = 0; r < spec_.n; ++r) elems_.push_back({r, f});
        break;
      }
      case GroupKind::Permutation: {
        std::unordered_map<Elem, int, ElemHash> seen;
        std::vector<Elem> queue{identity()};
        seen.emplace(queue[0], 0);
        std::vector<Elem> gens = spec_.perm_gens;
        for (const Elem& g : spec_.perm_gens) gens.push_back(inv(g));
        for (size_t head = 0; head < queue.size(); ++head) {
          Elem cur = queue[head];
          for (const Elem& g : gens) {
            Elem nxt = mul(cur, g);
            if (seen.emplace(nxt, int(queue.size())).second) {
              if (i64(queue.size()) >= budget_)
                fail_budget("permutation group enumeration exceeds budget");
              queue.push_back(std::move(nxt));
            }
          }
        }
        std::sort(queue.begin(), queue.end());
        elems_ = std::move(queue);
        break;
      }
    }
    return elems_;
  }

  std::string elem_str(const Elem& e) const {
    std::string s = "(";
    for (size_t i = 0; i < e.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e[i]);
    }
    return s + ")";
  }

  const std::vector<std::vector<i64>>& hnf() const { return hnf_; }

 private:
  void enumerate_box(const std::vector<i64>& radix) const {
    std::vector<i64> cur(radix.size(), 0);
    box_rec(radix, cur, 0, false);
  }
  void box_rec(const std::vector<i64>& radix, std::vector<i64>& cur, size_t pos,
               bool canonicalize) const {
    if (pos == radix.size()) {
      elems_.push_back(canonicalize ? canon(cur) : cur);
      if (i64(elems_.size()) > budget_) fail_budget("group enumeration exceeds budget");
      return;
    }
    for (i64 v = 0; v < radix[pos]; ++v) {
      cur[pos] = v;
      box_rec(radix, cur, pos + 1, canonicalize);
    }
    cur[pos] = 0;
  }

  GroupSpec spec_;
  i64 budget_;
  i64 order_ = 0;
  std::vector<std::vector<i64>> hnf_;
  mutable std::vector<Elem> elems_;
};

// Subgroup generated by a set, as a sorted element list. Closure by
// left-multiplication BFS; generators are symmetrized internally.
inline std::vector<Elem> subgroup_closure(const Group& g, std::vector<Elem> gens) {
  std::unordered_map<Elem, char, ElemHash> seen;
  std::vector<Elem> queue{g.identity()};
  seen.emplace(queue[0], 1);
  size_t base = gens.size();
  for (size_t i = 0; i < base; ++i) gens.push_back(g.inv(gens[i]));
  for (size_t head = 0; head < queue.size(); ++head) {
    Elem cur = queue[head];
    for (const Elem& s : gens) {
      Elem nxt = g.mul(cur, s);
      if (seen.emplace(nxt, 1).second) {
        if (i64(queue.size()) >= g.budget()) fail_budget("subgroup closure exceeds budget");
        queue.push_back(std::move(nxt));
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

inline bool set_contains(const std::vector<Elem>& sorted, const Elem& e) {
  return std::binary_search(sorted.begin(), sorted.end(), e);
}

// Normal closure of h: close the conjugates of h under the full group
// (conjugating by group generators suffices once we close the subgroup).
inline std::vector<Elem> normal_closure(const Group& g, const std::vector<Elem>& group_gens,
                                        const Elem& h) {
  std::vector<Elem> closure = subgroup_closure(g, {h});
  for (;;) {
    std::vector<Elem> extra;
    for (const Elem& a : closure)
      for (const Elem& s : group_gens) {
        Elem c = g.conj(s, a);
        if (!set_contains(closure, c)) extra.push_back(c);
        Elem ci = g.conj(g.inv(s), a);
        if (!set_contains(closure, ci)) extra.push_back(ci);
      }
    if (extra.empty()) return closure;
    std::vector<Elem> gens = closure;
    gens.insert(gens.end(), extra.begin(), extra.end());
    closure = subgroup_closure(g, std::move(gens));
  }
}

// Derived subgroup [G,G] by enumeration: subgroup generated by all
// commutators of element pairs. Pair count is budget-guarded.
inline std::vector<Elem> derived_subgroup(const Group& g) {
  const std::vector<Elem>& all = g.elements();
  i64 pairs = checked_mul(i64(all.size()), i64(all.size()));
  if (pairs > g.budget())
    fail_budget("commutator pair enumeration exceeds budget");
  std::vector<Elem> comms;
  std::unordered_map<Elem, char, ElemHash> seen;
  for (const Elem& x : all)
    for (const Elem& y : all) {
      Elem c = g.commutator(x, y);
      if (seen.emplace(c, 1).second) comms.push_back(c);
    }
  return subgroup_closure(g, std::move(comms));
}

// Lower central series by enumeration; returns the number of steps until
// trivial, or -1 if it stabilizes above the trivial subgroup (not nilpotent).
inline int nilpotency_step(const Group& g) {
  const std::vector<Elem>& all = g.elements();
  std::vector<Elem> current = all;  // gamma_1 = G
  int step = 0;
  for (;;) {
    if (current.size() == 1) return step;
    if (checked_mul(i64(all.size()), i64(current.size())) > g.budget())
      fail_budget("central series enumeration exceeds budget");
    std::vector<Elem> comms;
    std::unordered_map<Elem, char, ElemHash> seen;
    for (const Elem& a : current)
      for (const Elem& x : all) {
        Elem c = g.commutator(x, a);
        if (seen.emplace(c, 1).second) comms.push_back(c);
      }
    std::vector<Elem> next = subgroup_closure(g, std::move(comms));
    if (next.size() == current.size()) return -1;
    current = std::move(next);
    ++step;
    if (step > 64) return -1;
  }
}

}  // namespace vtg

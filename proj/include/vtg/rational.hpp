#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "vtg/intops.hpp"

// Small exact rational type. All geometry that must be exact (polyhedral
// norm gauge LP, torus quotient distances, sumset hull gaps) runs on this.
// Numerator/denominator are kept reduced with den > 0; intermediates use
// __int128 and overflow past 64 bits throws.

namespace vtg {

struct Rat {
  i64 num = 0;
  i64 den = 1;

  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den == 0) throw std::domain_error("vtg: rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i64 g = gcd64(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rat from_i128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("vtg: rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 a = n < 0 ? -n : n, b = d;
    while (b) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    Rat r;
    r.num = checked_cast(n);
    r.den = checked_cast(d);
    return r;
  }

  double to_double() const { return double(num) / double(den); }
  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }
  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return from_i128(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return from_i128(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from_i128(i128(a.num) * b.num, i128(a.den) * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::domain_error("vtg: rational division by zero");
    return from_i128(i128(a.num) * b.den, i128(a.den) * b.num);
  }
  Rat operator-() const {
    Rat r = *this;
    r.num = -r.num;
    return r;
  }
  Rat& operator+=(const Rat& b) { return *this = *this + b; }
  Rat& operator-=(const Rat& b) { return *this = *this - b; }
  Rat& operator*=(const Rat& b) { return *this = *this * b; }
  Rat& operator/=(const Rat& b) { return *this = *this / b; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return i128(a.num) * b.den < i128(b.num) * a.den;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }
};

inline Rat rat_abs(const Rat& a) { return a.num < 0 ? -a : a; }

inline Rat rat_floor(const Rat& a) { return Rat(floor_div(a.num, a.den)); }

using RVec = std::vector<Rat>;

inline RVec rvec_add(const RVec& a, const RVec& b) {
  RVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RVec rvec_sub(const RVec& a, const RVec& b) {
  RVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline RVec rvec_scale(const Rat& c, const RVec& a) {
  RVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Rat rvec_dot(const RVec& a, const RVec& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat rvec_l1(const RVec& a) {
  Rat s(0);
  for (const Rat& x : a) s += rat_abs(x);
  return s;
}

inline Rat rvec_dist2(const RVec& a, const RVec& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) {
    Rat d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline bool rvec_is_zero(const RVec& a) {
  for (const Rat& x : a)
    if (!x.is_zero()) return false;
  return true;
}

// Gaussian elimination over the rationals. Returns the rank; if rhs is
// non-null and the system is uniquely solvable, writes the solution.
inline int rat_solve(std::vector<RVec> mat, RVec* rhs, RVec* out) {
  int rows = int(mat.size());
  int cols = rows ? int(mat[0].size()) : 0;
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!mat[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(mat[p], mat[r]);
    if (rhs && p != r) std::swap((*rhs)[p], (*rhs)[r]);
    Rat inv = Rat(1) / mat[r][c];
    for (int j = c; j < cols; ++j) mat[r][j] *= inv;
    if (rhs) (*rhs)[r] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || mat[i][c].is_zero()) continue;
      Rat f = mat[i][c];
      for (int j = c; j < cols; ++j) mat[i][j] -= f * mat[r][j];
      if (rhs) (*rhs)[i] -= f * (*rhs)[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (rhs && out) {
    if (r < cols) return r;  // not uniquely solvable; caller checks rank
    for (int i = r; i < rows; ++i)
      if (!(*rhs)[i].is_zero()) return -1;  // inconsistent
    out->assign(cols, Rat(0));
    for (int i = 0; i < r; ++i) (*out)[pivot_col[i]] = (*rhs)[i];
  }
  return r;
}

inline int rat_rank(const std::vector<RVec>& mat) {
  std::vector<RVec> m = mat;
  return rat_solve(std::move(m), nullptr, nullptr);
}

}  // namespace vtg

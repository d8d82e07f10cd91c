#pragma once

#include <cstdint>
#include <stdexcept>

// Exact integer helpers shared by the rational type and the lattice
// normal-form code. Everything here throws on 64-bit overflow instead of
// wrapping; desk-scale inputs never get close, so a throw means a bug or a
// genuinely out-of-budget input.

namespace vtg {

using i64 = long long;
using i128 = __int128;

inline i64 checked_cast(i128 v) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
    throw std::overflow_error("vtg: 64-bit integer overflow");
  return static_cast<i64>(v);
}

inline i64 checked_mul(i64 a, i64 b) { return checked_cast(i128(a) * b); }
inline i64 checked_add(i64 a, i64 b) { return checked_cast(i128(a) + b); }

inline i64 gcd64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Floor division/modulo: remainder always in [0, |b|).
inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline i64 floor_mod(i64 a, i64 b) { return a - floor_div(a, b) * b; }

}  // namespace vtg

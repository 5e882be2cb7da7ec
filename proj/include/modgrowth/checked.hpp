#pragma once

#include <cstdint>
#include <limits>
#include <utility>

#include "modgrowth/error.hpp"

namespace modgrowth::checked {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 addition overflow");
  return r;
}

inline i64 sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 subtraction overflow");
  return r;
}

inline i64 mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 multiplication overflow");
  return r;
}

inline i64 neg(i64 a) {
  if (a == std::numeric_limits<i64>::min()) throw OverflowError("int64 negation overflow");
  return -a;
}

inline i64 narrow(i128 v) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min()) {
    throw OverflowError("value does not fit in int64");
  }
  return static_cast<i64>(v);
}

// a*d - b*c without intermediate overflow.
inline i64 det2(i64 a, i64 b, i64 c, i64 d) {
  return narrow(static_cast<i128>(a) * d - static_cast<i128>(b) * c);
}

inline i64 gcd(i64 a, i64 b) {
  if (a < 0) a = neg(a);
  if (b < 0) b = neg(b);
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Bezout {
  i64 g;
  i64 x;
  i64 y;
};

// x*a + y*b = g = gcd(a, b) >= 0.
inline Bezout extended_gcd(i64 a, i64 b) {
  i64 old_r = a, r = b;
  i64 old_x = 1, x = 0;
  i64 old_y = 0, y = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_x - q * x;
    old_x = x;
    x = t;
    t = old_y - q * y;
    old_y = y;
    y = t;
  }
  if (old_r < 0) return {-old_r, -old_x, -old_y};
  return {old_r, old_x, old_y};
}

// floor(sqrt(n)) for n >= 0, exact.
inline i64 isqrt(i128 n) {
  if (n <= 0) return 0;
  auto r = static_cast<i128>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return narrow(r);
}

inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace modgrowth::checked

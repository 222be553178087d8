#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace rexp {

using i128 = __int128;
using u128 = unsigned __int128;

/// Exact count type used by every counting routine (representation tables,
/// lattice counts). Overflow is an error, never a wraparound.
using Count = u128;

/// Raised when an exact 128-bit computation would overflow.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Raised when an input exceeds a documented desk-scale guard.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit count overflow in addition");
  return r;
}

inline Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit count overflow in multiplication");
  return r;
}

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit overflow in addition");
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit overflow in multiplication");
  return r;
}

inline constexpr i128 kI128Max = static_cast<i128>(~u128{0} >> 1);

/// base^exp, saturating at kI128Max. Only meaningful for base >= 0.
inline i128 saturating_pow(i128 base, int exp) {
  i128 r = 1;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) return kI128Max;
  }
  return r;
}

/// base^exp, throwing OverflowError instead of saturating.
inline i128 checked_pow(i128 base, int exp) {
  i128 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

/// Largest r >= 0 with r^d <= x (x >= 0, d >= 1).
inline std::int64_t integer_root(i128 x, int d) {
  if (x <= 0) return 0;
  if (d == 1) {
    if (x > std::numeric_limits<std::int64_t>::max()) throw OverflowError("integer_root result exceeds 64 bits");
    return static_cast<std::int64_t>(x);
  }
  // floating estimate, then exact correction in both directions
  const long double guess = std::floor(std::pow(static_cast<long double>(x), 1.0L / static_cast<long double>(d)));
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t r = guess >= static_cast<long double>(kMax) ? kMax - 1 : static_cast<std::int64_t>(guess);
  // overflow means the power exceeds every i128, including x
  const auto pow_le = [x, d](i128 base) {
    i128 v = 1;
    for (int i = 0; i < d; ++i)
      if (__builtin_mul_overflow(v, base, &v)) return false;
    return v <= x;
  };
  while (r > 0 && !pow_le(r)) --r;
  while (r < kMax && pow_le(static_cast<i128>(r) + 1)) ++r;
  return r;
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

inline std::string to_string(i128 v) {
  if (v < 0) return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
  return to_string(static_cast<u128>(v));
}

inline double to_double(u128 v) { return static_cast<double>(v); }

}  // namespace rexp

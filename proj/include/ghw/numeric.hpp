#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>

#include "ghw/error.hpp"

namespace ghw {

using Count = std::uint64_t;

/// Divisibility with the cardinal conventions: everything divides 0, and 0
/// divides only 0.
constexpr bool divides(Count divisor, Count value) noexcept {
  if (divisor == 0) return value == 0;
  return value % divisor == 0;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorKind::IntegerOverflow, std::to_string(a) + " + " + std::to_string(b));
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Error(ErrorKind::IntegerOverflow, std::to_string(a) + " - " + std::to_string(b));
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorKind::IntegerOverflow, std::to_string(a) + " * " + std::to_string(b));
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

/// Non-negative residue; m must be positive.
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) noexcept {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// Returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> extended_gcd(std::int64_t a,
                                                                         std::int64_t b) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, checked_sub(old_r, checked_mul(q, r)));
    std::tie(old_s, s) = std::make_tuple(s, checked_sub(old_s, checked_mul(q, s)));
    std::tie(old_t, t) = std::make_tuple(t, checked_sub(old_t, checked_mul(q, t)));
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline Count lcm_checked(Count a, Count b) {
  if (a == 0 || b == 0) return 0;
  Count g = std::gcd(a, b);
  Count r;
  if (__builtin_mul_overflow(a / g, b, &r))
    throw Error(ErrorKind::IntegerOverflow, "lcm(" + std::to_string(a) + ", " + std::to_string(b) + ")");
  return r;
}

}  // namespace ghw

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "bvass/error.hpp"

namespace bvass {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw ArithmeticOverflowError("integer overflow in addition");
  }
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw ArithmeticOverflowError("integer overflow in subtraction");
  }
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw ArithmeticOverflowError("integer overflow in multiplication");
  }
  return r;
}

}  // namespace detail

/// A displacement in Z^2. All arithmetic is exact; overflow raises instead of wrapping.
struct IVec2 {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend IVec2 operator+(IVec2 a, IVec2 b) {
    return {detail::checked_add(a.x, b.x), detail::checked_add(a.y, b.y)};
  }
  friend IVec2 operator-(IVec2 a, IVec2 b) {
    return {detail::checked_sub(a.x, b.x), detail::checked_sub(a.y, b.y)};
  }
  friend IVec2 operator-(IVec2 a) { return IVec2{0, 0} - a; }
  friend IVec2 operator*(std::int64_t k, IVec2 a) {
    return {detail::checked_mul(k, a.x), detail::checked_mul(k, a.y)};
  }

  bool nonneg() const { return x >= 0 && y >= 0; }
  bool is_zero() const { return x == 0 && y == 0; }

  // Lexicographic; componentwise comparisons are spelled out as cw_leq below.
  auto operator<=>(const IVec2&) const = default;
};

/// A point of N^2. The constructor enforces nonnegativity.
struct NVec2 {
  std::int64_t x = 0;
  std::int64_t y = 0;

  NVec2() = default;
  NVec2(std::int64_t px, std::int64_t py) : x(px), y(py) {
    if (px < 0 || py < 0) {
      throw Error("negative coordinate in point of N^2");
    }
  }

  IVec2 as_ivec() const { return {x, y}; }
  operator IVec2() const { return {x, y}; }
  bool is_zero() const { return x == 0 && y == 0; }

  friend NVec2 operator+(NVec2 a, NVec2 b) {
    return {detail::checked_add(a.x, b.x), detail::checked_add(a.y, b.y)};
  }
  friend IVec2 operator-(NVec2 a, NVec2 b) { return a.as_ivec() - b.as_ivec(); }

  auto operator<=>(const NVec2&) const = default;
};

inline bool cw_leq(IVec2 a, IVec2 b) { return a.x <= b.x && a.y <= b.y; }
inline bool cw_leq(NVec2 a, NVec2 b) { return a.x <= b.x && a.y <= b.y; }

/// The point of N^2 equal to v, if v is nonnegative.
inline std::optional<NVec2> as_point(IVec2 v) {
  if (!v.nonneg()) return std::nullopt;
  return NVec2{v.x, v.y};
}

inline std::string to_string(IVec2 v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}
inline std::string to_string(NVec2 v) { return to_string(v.as_ivec()); }

std::ostream& operator<<(std::ostream& os, IVec2 v);
std::ostream& operator<<(std::ostream& os, NVec2 v);

}  // namespace bvass

#pragma once

#include <span>
#include <string>
#include <vector>

#include "bvass/vec2.hpp"

namespace bvass {

/// A convex cone of Q^2 in normalized form. Every convex cone of the plane is
/// exactly one of: the origin, a ray, a line, a sector spanning strictly
/// between 0 and 180 degrees, a closed half-plane, or the whole plane.
/// Directions are primitive (gcd 1) integer vectors; Sector(lo, hi) sweeps
/// counterclockwise from lo to hi with cross(lo, hi) > 0; HalfPlane(lo) is the
/// 180-degree sweep starting at lo. All predicates use integer cross products,
/// never floating point.
class Cone2 {
public:
  enum class Kind { Zero, Ray, Line, Sector, HalfPlane, Plane };

  Cone2() = default;  // Zero
  static Cone2 zero() { return Cone2(); }
  static Cone2 ray(IVec2 dir);
  static Cone2 line(IVec2 dir);
  static Cone2 sector(IVec2 lo, IVec2 hi);
  static Cone2 half_plane(IVec2 lo);
  static Cone2 plane();

  Kind kind() const { return kind_; }
  IVec2 lo() const { return lo_; }
  IVec2 hi() const { return hi_; }

  bool contains(IVec2 v) const;

  /// Extreme directions: none for Zero/Plane, {dir} for Ray, {dir, -dir} for
  /// Line, {lo, hi} for Sector, {lo, -lo} for HalfPlane. Spanning them
  /// reproduces the cone.
  std::vector<IVec2> rays() const;

  bool operator==(const Cone2&) const = default;

  std::string describe() const;

private:
  Kind kind_ = Kind::Zero;
  IVec2 lo_{0, 0};
  IVec2 hi_{0, 0};
};

/// cross(a, b) > 0 iff b lies strictly counterclockwise of a (within 180deg).
inline std::int64_t cross(IVec2 a, IVec2 b) {
  return detail::checked_sub(detail::checked_mul(a.x, b.y), detail::checked_mul(a.y, b.x));
}
inline std::int64_t dot(IVec2 a, IVec2 b) {
  return detail::checked_add(detail::checked_mul(a.x, b.x), detail::checked_mul(a.y, b.y));
}

/// v divided by gcd(|x|, |y|); zero stays zero.
IVec2 primitive(IVec2 v);

/// The cone spanned by a finite direction set: primitive reduction, angular
/// sort, then classification by the largest angular gap (> 180deg gives a
/// sector or ray, exactly 180deg a half-plane or line, all gaps < 180deg the
/// whole plane).
Cone2 span(std::span<const IVec2> dirs);

/// A cone contained in the closed nonnegative quadrant (Zero, Ray or Sector).
class QuadrantCone {
public:
  QuadrantCone() = default;  // Zero
  explicit QuadrantCone(Cone2 cone);

  const Cone2& cone() const { return cone_; }
  bool contains(IVec2 v) const { return cone_.contains(v); }
  std::vector<IVec2> rays() const { return cone_.rays(); }

  bool operator==(const QuadrantCone&) const = default;

private:
  Cone2 cone_;
};

/// Exact intersection with the closed nonnegative quadrant.
QuadrantCone clip_to_quadrant(const Cone2& c);

/// The cone of the prefix-sum-constrained combinations of a: the origin when
/// no element of a is nonnegative and nonzero, otherwise span(a) clipped to
/// the quadrant.
QuadrantCone conp_formula(std::span<const IVec2> a);

/// (c + Q>=0 * v) n Q>=0^2, computed as span(rays(c) u {v}) clipped.
QuadrantCone stabilize(const QuadrantCone& c, IVec2 v);

/// Whether c equals its v-stabilization.
bool is_v_stable(const QuadrantCone& c, IVec2 v);

}  // namespace bvass

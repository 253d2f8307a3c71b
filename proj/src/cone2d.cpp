#include "bvass/cone2d.hpp"

#include <algorithm>
#include <numeric>

#include "bvass/error.hpp"

namespace bvass {

IVec2 primitive(IVec2 v) {
  if (v.is_zero()) return v;
  const std::int64_t g = std::gcd(v.x < 0 ? -v.x : v.x, v.y < 0 ? -v.y : v.y);
  return {v.x / g, v.y / g};
}

Cone2 Cone2::ray(IVec2 dir) {
  dir = primitive(dir);
  if (dir.is_zero()) throw Error("ray direction must be nonzero");
  Cone2 c;
  c.kind_ = Kind::Ray;
  c.lo_ = c.hi_ = dir;
  return c;
}

Cone2 Cone2::line(IVec2 dir) {
  dir = primitive(dir);
  if (dir.is_zero()) throw Error("line direction must be nonzero");
  // Normalize to the representative in the upper half (or positive x-axis).
  if (dir.y < 0 || (dir.y == 0 && dir.x < 0)) dir = -dir;
  Cone2 c;
  c.kind_ = Kind::Line;
  c.lo_ = c.hi_ = dir;
  return c;
}

Cone2 Cone2::sector(IVec2 lo, IVec2 hi) {
  lo = primitive(lo);
  hi = primitive(hi);
  if (cross(lo, hi) <= 0) throw Error("sector bounds must span strictly between 0 and 180 degrees");
  Cone2 c;
  c.kind_ = Kind::Sector;
  c.lo_ = lo;
  c.hi_ = hi;
  return c;
}

Cone2 Cone2::half_plane(IVec2 lo) {
  lo = primitive(lo);
  if (lo.is_zero()) throw Error("half-plane direction must be nonzero");
  Cone2 c;
  c.kind_ = Kind::HalfPlane;
  c.lo_ = lo;
  c.hi_ = -lo;
  return c;
}

Cone2 Cone2::plane() {
  Cone2 c;
  c.kind_ = Kind::Plane;
  return c;
}

bool Cone2::contains(IVec2 v) const {
  if (v.is_zero()) return true;
  switch (kind_) {
    case Kind::Zero:
      return false;
    case Kind::Ray:
      return cross(lo_, v) == 0 && dot(lo_, v) > 0;
    case Kind::Line:
      return cross(lo_, v) == 0;
    case Kind::Sector:
      return cross(lo_, v) >= 0 && cross(v, hi_) >= 0;
    case Kind::HalfPlane:
      return cross(lo_, v) >= 0;
    case Kind::Plane:
      return true;
  }
  return false;
}

std::vector<IVec2> Cone2::rays() const {
  switch (kind_) {
    case Kind::Zero:
    case Kind::Plane:
      return {};
    case Kind::Ray:
      return {lo_};
    case Kind::Line:
    case Kind::HalfPlane:
      return {lo_, -lo_};
    case Kind::Sector:
      return {lo_, hi_};
  }
  return {};
}

std::string Cone2::describe() const {
  switch (kind_) {
    case Kind::Zero:
      return "zero";
    case Kind::Ray:
      return "ray " + to_string(lo_);
    case Kind::Line:
      return "line " + to_string(lo_);
    case Kind::Sector:
      return "sector " + to_string(lo_) + ".." + to_string(hi_);
    case Kind::HalfPlane:
      return "half-plane from " + to_string(lo_);
    case Kind::Plane:
      return "plane";
  }
  return "?";
}

namespace {

// Counterclockwise angular order starting at the positive x-axis; collinear
// equal directions compare equal.
int half_of(IVec2 v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

bool angular_less(IVec2 a, IVec2 b) {
  const int ha = half_of(a);
  const int hb = half_of(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

}  // namespace

Cone2 span(std::span<const IVec2> dirs) {
  std::vector<IVec2> ds;
  for (IVec2 d : dirs) {
    const IVec2 p = primitive(d);
    if (!p.is_zero()) ds.push_back(p);
  }
  std::sort(ds.begin(), ds.end(), angular_less);
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());

  if (ds.empty()) return Cone2::zero();
  if (ds.size() == 1) return Cone2::ray(ds[0]);
  if (ds.size() == 2 && ds[0] == -ds[1]) return Cone2::line(ds[0]);

  // Find the largest angular gap between cyclically consecutive directions.
  // gap > 180deg: everything fits in the complementary sector. gap = 180deg:
  // a closed half-plane. All gaps < 180deg: the plane.
  const std::size_t k = ds.size();
  std::size_t best = k;  // index i such that the gap ds[i] -> ds[(i+1)%k] is widest
  int best_class = 0;    // 2: >180, 1: =180, 0: <180
  for (std::size_t i = 0; i < k; ++i) {
    const IVec2 a = ds[i];
    const IVec2 b = ds[(i + 1) % k];
    // Angle from a counterclockwise to b (nonzero since directions are
    // distinct; full turn when k == 1 is handled above).
    int cls;
    const std::int64_t cr = cross(a, b);
    if (a == -b) {
      cls = 1;
    } else if (cr > 0 || (cr == 0 && dot(a, b) > 0)) {
      cls = 0;  // strictly below 180 (cr == 0 with positive dot cannot occur after dedup)
    } else {
      cls = 2;  // above 180
    }
    if (best == k || cls > best_class) {
      best = i;
      best_class = cls;
    }
  }

  if (best_class == 2) {
    const IVec2 lo = ds[(best + 1) % k];
    const IVec2 hi = ds[best];
    return lo == hi ? Cone2::ray(lo) : Cone2::sector(lo, hi);
  }
  if (best_class == 1) {
    return Cone2::half_plane(ds[(best + 1) % k]);
  }
  return Cone2::plane();
}

QuadrantCone::QuadrantCone(Cone2 cone) : cone_(cone) {
  switch (cone_.kind()) {
    case Cone2::Kind::Zero:
      return;
    case Cone2::Kind::Ray:
      if (cone_.lo().nonneg()) return;
      break;
    case Cone2::Kind::Sector:
      if (cone_.lo().nonneg() && cone_.hi().nonneg()) return;
      break;
    default:
      break;
  }
  throw Error("cone is not contained in the nonnegative quadrant: " + cone_.describe());
}

QuadrantCone clip_to_quadrant(const Cone2& c) {
  static const IVec2 kAxes[2] = {{1, 0}, {0, 1}};
  switch (c.kind()) {
    case Cone2::Kind::Zero:
      return QuadrantCone();
    case Cone2::Kind::Plane:
      return QuadrantCone(Cone2::sector({1, 0}, {0, 1}));
    case Cone2::Kind::Ray:
      return c.lo().nonneg() ? QuadrantCone(c) : QuadrantCone();
    case Cone2::Kind::Line: {
      if (c.lo().nonneg()) return QuadrantCone(Cone2::ray(c.lo()));
      const IVec2 neg = -c.lo();
      if (neg.nonneg()) return QuadrantCone(Cone2::ray(neg));
      return QuadrantCone();
    }
    case Cone2::Kind::Sector:
    case Cone2::Kind::HalfPlane: {
      // The intersection of two convex cones each spanning at most 180deg is
      // a convex cone whose extreme rays come from the extreme rays of either
      // operand, filtered by membership in the other.
      std::vector<IVec2> keep;
      for (IVec2 r : c.rays()) {
        if (r.nonneg()) keep.push_back(r);
      }
      for (IVec2 axis : kAxes) {
        if (c.contains(axis)) keep.push_back(axis);
      }
      if (keep.empty()) return QuadrantCone();
      return QuadrantCone(span(keep));
    }
  }
  return QuadrantCone();
}

QuadrantCone conp_formula(std::span<const IVec2> a) {
  const bool has_nonneg_nonzero = std::any_of(
      a.begin(), a.end(), [](IVec2 v) { return v.nonneg() && !v.is_zero(); });
  if (!has_nonneg_nonzero) return QuadrantCone();
  return clip_to_quadrant(span(a));
}

QuadrantCone stabilize(const QuadrantCone& c, IVec2 v) {
  std::vector<IVec2> dirs = c.rays();
  dirs.push_back(v);
  return clip_to_quadrant(span(dirs));
}

bool is_v_stable(const QuadrantCone& c, IVec2 v) { return stabilize(c, v) == c; }

}  // namespace bvass

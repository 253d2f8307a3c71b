#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "bvass/cone2d.hpp"
#include "helpers.hpp"

using namespace bvass;

namespace {

// Exact membership in con(dirs) via nonnegative rational combinations: in the
// plane, two directions always suffice, so try singles and all pairs with a
// 2x2 Cramer solve over integers (sign checks only, no division).
bool rational_combination_member(const std::vector<IVec2>& dirs, IVec2 p) {
  if (p.is_zero()) return true;
  for (IVec2 d : dirs) {
    if (d.is_zero()) continue;
    if (cross(d, p) == 0 && dot(d, p) > 0) return true;
  }
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      const IVec2 a = dirs[i];
      const IVec2 b = dirs[j];
      const std::int64_t det = cross(a, b);
      if (det == 0) continue;
      // lambda = cross(p, b) / det, mu = cross(a, p) / det
      const std::int64_t num_l = cross(p, b);
      const std::int64_t num_m = cross(a, p);
      const auto sign = [](std::int64_t v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); };
      if (sign(num_l) * sign(det) >= 0 && sign(num_m) * sign(det) >= 0) return true;
    }
  }
  return false;
}

QuadrantCone random_quadrant_cone(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<std::int64_t> coord(0, 5);
  switch (kind(rng)) {
    case 0:
      return QuadrantCone();
    case 1: {
      IVec2 d{coord(rng), coord(rng)};
      if (d.is_zero()) d = {1, 1};
      return QuadrantCone(Cone2::ray(d));
    }
    default: {
      IVec2 lo{coord(rng), coord(rng)};
      IVec2 hi{coord(rng), coord(rng)};
      if (lo.is_zero()) lo = {1, 0};
      if (hi.is_zero()) hi = {0, 1};
      if (cross(lo, hi) < 0) std::swap(lo, hi);
      if (cross(lo, hi) == 0) return QuadrantCone(Cone2::ray(lo));
      return QuadrantCone(Cone2::sector(lo, hi));
    }
  }
}

}  // namespace

TEST_CASE("span fixtures") {
  CHECK(span(std::vector<IVec2>{}) == Cone2::zero());
  CHECK(span(std::vector<IVec2>{{2, 4}}) == Cone2::ray({1, 2}));
  CHECK(span(std::vector<IVec2>{{2, 1}, {1, 2}, {-3, -1}}) == Cone2::sector({2, 1}, {-3, -1}));
  CHECK(span(std::vector<IVec2>{{1, 0}, {-2, 0}}) == Cone2::line({1, 0}));
  CHECK(span(std::vector<IVec2>{{1, 0}, {-1, 0}, {0, 1}}) == Cone2::half_plane({1, 0}));
  CHECK(span(std::vector<IVec2>{{1, 0}, {-1, 2}, {0, -1}}) == Cone2::plane());
  CHECK(span(std::vector<IVec2>{{0, 0}}) == Cone2::zero());
}

TEST_CASE("span is order-independent and scale-invariant") {
  std::mt19937_64 rng(0xB001);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<IVec2> dirs;
    std::uniform_int_distribution<int> n(0, 4);
    const int count = n(rng);
    for (int i = 0; i < count; ++i) dirs.push_back(bvass::testing::random_ivec(rng, -4, 4));
    const Cone2 base = span(dirs);

    std::vector<IVec2> shuffled = dirs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(span(shuffled) == base);

    std::vector<IVec2> scaled = dirs;
    std::uniform_int_distribution<std::int64_t> factor(1, 4);
    for (IVec2& d : scaled) d = factor(rng) * d;
    CHECK(span(scaled) == base);
  }
}

TEST_CASE("cone membership matches the rational-combination oracle") {
  std::mt19937_64 rng(0xB002);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<IVec2> dirs;
    std::uniform_int_distribution<int> n(0, 4);
    const int count = n(rng);
    for (int i = 0; i < count; ++i) dirs.push_back(bvass::testing::random_ivec(rng, -4, 4));
    const Cone2 cone = span(dirs);
    const IVec2 p = bvass::testing::random_ivec(rng, -8, 8);
    CAPTURE(iter);
    CAPTURE(cone.describe());
    CHECK(cone.contains(p) == rational_combination_member(dirs, p));
  }
}

TEST_CASE("clip to quadrant fixtures") {
  CHECK(clip_to_quadrant(span(std::vector<IVec2>{{2, -1}, {1, 2}})) ==
        QuadrantCone(Cone2::sector({1, 0}, {1, 2})));
  CHECK(clip_to_quadrant(span(std::vector<IVec2>{{1, 0}, {-1, 2}, {0, -1}})) ==
        QuadrantCone(Cone2::sector({1, 0}, {0, 1})));
  CHECK(clip_to_quadrant(Cone2::zero()) == QuadrantCone());
  CHECK(clip_to_quadrant(Cone2::line({1, -1})) == QuadrantCone());
  CHECK(clip_to_quadrant(Cone2::line({0, 1})) == QuadrantCone(Cone2::ray({0, 1})));
  CHECK(clip_to_quadrant(Cone2::sector({-2, 1}, {-1, -2})) == QuadrantCone());
}

TEST_CASE("clipping agrees with membership on a grid") {
  std::mt19937_64 rng(0xB003);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<IVec2> dirs;
    std::uniform_int_distribution<int> n(0, 4);
    const int count = n(rng);
    for (int i = 0; i < count; ++i) dirs.push_back(bvass::testing::random_ivec(rng, -4, 4));
    const Cone2 cone = span(dirs);
    const QuadrantCone clipped = clip_to_quadrant(cone);
    for (std::int64_t x = -4; x <= 6; ++x) {
      for (std::int64_t y = -4; y <= 6; ++y) {
        const IVec2 p{x, y};
        const bool expected = cone.contains(p) && p.nonneg();
        CAPTURE(iter);
        CAPTURE(x);
        CAPTURE(y);
        CHECK(clipped.contains(p) == expected);
      }
    }
  }
}

TEST_CASE("closed-form prefix cone fixtures") {
  CHECK(conp_formula(std::vector<IVec2>{{-1, 2}, {2, -1}}) == QuadrantCone());
  CHECK(conp_formula(std::vector<IVec2>{{1, 1}, {-1, 2}, {2, -1}}) ==
        QuadrantCone(Cone2::sector({1, 0}, {0, 1})));
  CHECK(conp_formula(std::vector<IVec2>{{1, 0}}) == QuadrantCone(Cone2::ray({1, 0})));
}

TEST_CASE("stabilization fixtures") {
  const QuadrantCone sector21_12(Cone2::sector({2, 1}, {1, 2}));
  // (-3,-1) sweeps the sector onto the y-axis but no further.
  CHECK(stabilize(sector21_12, {-3, -1}) == QuadrantCone(Cone2::sector({2, 1}, {0, 1})));
  // (-1,-1) escapes through both boundary rays, reaching both axes.
  CHECK(stabilize(sector21_12, {-1, -1}) == QuadrantCone(Cone2::sector({1, 0}, {0, 1})));
  CHECK(stabilize(QuadrantCone(), {1, 0}) == QuadrantCone(Cone2::ray({1, 0})));
}

TEST_CASE("stability fixtures") {
  const QuadrantCone cone(Cone2::sector({2, 1}, {0, 1}));
  CHECK(is_v_stable(cone, {-1, 0}));
  CHECK_FALSE(is_v_stable(cone, {3, -1}));
  CHECK(is_v_stable(QuadrantCone(), {-1, -1}));
  CHECK(is_v_stable(QuadrantCone(), {0, 0}));
}

TEST_CASE("stabilizer of a sector matches the half-plane characterization") {
  // stab(con{(2,1),(0,1)}) = {v : 2*v.y >= v.x}.
  const QuadrantCone cone(Cone2::sector({2, 1}, {0, 1}));
  for (std::int64_t x = -10; x <= 10; ++x) {
    for (std::int64_t y = -10; y <= 10; ++y) {
      CAPTURE(x);
      CAPTURE(y);
      CHECK(is_v_stable(cone, {x, y}) == (2 * y >= x));
    }
  }
}

TEST_CASE("nonnegative vectors stabilize exactly the cone members") {
  std::mt19937_64 rng(0xB004);
  for (int iter = 0; iter < 100; ++iter) {
    const QuadrantCone cone = random_quadrant_cone(rng);
    for (std::int64_t x = 0; x <= 5; ++x) {
      for (std::int64_t y = 0; y <= 5; ++y) {
        const IVec2 v{x, y};
        CAPTURE(cone.cone().describe());
        CHECK(is_v_stable(cone, v) == cone.contains(v));
      }
    }
  }
}

TEST_CASE("stabilizers of nonzero cones are closed under addition") {
  std::mt19937_64 rng(0xB005);
  int checked = 0;
  for (int iter = 0; iter < 1500; ++iter) {
    const QuadrantCone cone = random_quadrant_cone(rng);
    if (cone.cone().kind() == Cone2::Kind::Zero) continue;
    const IVec2 u = bvass::testing::random_ivec(rng, -5, 5);
    const IVec2 v = bvass::testing::random_ivec(rng, -5, 5);
    if (!is_v_stable(cone, u) || !is_v_stable(cone, v)) continue;
    ++checked;
    CAPTURE(cone.cone().describe());
    CAPTURE(u);
    CAPTURE(v);
    CHECK(is_v_stable(cone, u + v));
  }
  CHECK(checked > 50);
}

TEST_CASE("quadrant containment is enforced") {
  CHECK_THROWS(QuadrantCone(Cone2::ray({-1, 0})));
  CHECK_THROWS(QuadrantCone(Cone2::plane()));
  CHECK_THROWS(QuadrantCone(Cone2::sector({2, 1}, {-1, 2})));
}

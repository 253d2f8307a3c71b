#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "bvass/model.hpp"
#include "bvass/periodic.hpp"
#include "bvass/vec2.hpp"

namespace bvass::testing {

/// Membership by exhaustive coefficient search, independent of the grid DP.
inline bool brute_member(const std::vector<NVec2>& gens, NVec2 y) {
  if (y.is_zero()) return true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const NVec2 g = gens[i];
    if (g.is_zero() || g.x > y.x || g.y > y.y) continue;
    std::vector<NVec2> rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    // Use generator i between 1 and as many times as fits, then recurse on
    // the remaining generators only.
    NVec2 left = y;
    while (left.x >= g.x && left.y >= g.y) {
      left = NVec2{left.x - g.x, left.y - g.y};
      if (brute_member(rest, left)) return true;
    }
  }
  return false;
}

inline std::vector<NVec2> random_generators(std::mt19937_64& rng, int max_count,
                                            std::int64_t max_coord) {
  std::uniform_int_distribution<int> count_dist(0, max_count);
  std::uniform_int_distribution<std::int64_t> coord(0, max_coord);
  std::vector<NVec2> gens;
  const int n = count_dist(rng);
  for (int i = 0; i < n; ++i) {
    gens.push_back(NVec2{coord(rng), coord(rng)});
  }
  return gens;
}

inline IVec2 random_ivec(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> coord(lo, hi);
  return IVec2{coord(rng), coord(rng)};
}

inline Bvass parse_model(const char* text) { return Bvass::parse(text); }

inline Configuration config(const char* state, std::int64_t x, std::int64_t y) {
  return Configuration{StateId{state}, NVec2{x, y}};
}

}  // namespace bvass::testing

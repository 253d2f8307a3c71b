#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bvass/periodic.hpp"
#include "bvass/vec2.hpp"

namespace bvass {

struct AccelLimits {
  std::int64_t max_rounds = 10'000;
  std::int64_t max_points = 1'000'000;
};

struct AccelReport {
  PeriodicSet result;
  std::int64_t rounds = 0;
  std::int64_t frontier_peak = 0;
  bool cone_check = false;
};

/// Finite generator set for the prefix-sum-closed periodic set of z: all
/// finite sums of elements of z whose partial sums stay in N^2. Fixpoint
/// iteration X <- X u (X + Z) n N^2 from X = {(0,0)}, stopped by the
/// Dickson-basis shifted-inclusion test for every z. X is accumulated
/// unreduced; the returned set is the reduced canonical form. Raises
/// ResourceLimitError past the round or point caps; raises std::logic_error
/// if the cone cross-check ever fails.
AccelReport per_plus_report(std::span<const IVec2> z, AccelLimits limits = {});
PeriodicSet per_plus(std::span<const IVec2> z, AccelLimits limits = {});

/// Least periodic set containing p and closed under adding vectors of
/// iterable without leaving N^2; equals per_plus over iterable plus the
/// generators of p.
PeriodicSet accelerate(std::span<const IVec2> iterable, const PeriodicSet& p,
                       AccelLimits limits = {});

/// Cross-check: the cone spanned by the computed generators, clipped to the
/// quadrant, must match the closed-form cone of the input vectors.
bool check_cone(std::span<const IVec2> z, const PeriodicSet& result);

}  // namespace bvass

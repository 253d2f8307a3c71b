#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "bvass/vec2.hpp"

namespace bvass {

namespace limits {
/// Cell cap for the membership grid DP.
inline constexpr std::int64_t kMemberCellCap = 100'000'000;
/// Cap on DFS nodes visited while enumerating minimal solutions.
inline constexpr std::int64_t kMinSolutionCap = 20'000'000;
}  // namespace limits

/// Coefficient vector aligned with a generator list.
using CoeffVector = std::vector<std::int64_t>;

/// A finitely-generated periodic subset of N^2, kept in canonical form:
/// generators sorted lexicographically, deduplicated, zero vector removed.
/// The represented set is all finite sums of generators (the empty sum (0,0)
/// included), so default construction yields {(0,0)}.
class PeriodicSet {
public:
  PeriodicSet() = default;
  explicit PeriodicSet(std::vector<NVec2> generators);

  const std::vector<NVec2>& generators() const { return gens_; }
  bool trivial() const { return gens_.empty(); }

  /// Membership of y, decided by a forward-closure DP over the grid
  /// [0..y.x] x [0..y.y]. Throws ResourceLimitError past cell_cap.
  bool contains(NVec2 y, std::int64_t cell_cap = limits::kMemberCellCap) const;
  /// Convenience: false whenever v has a negative coordinate.
  bool contains(IVec2 v, std::int64_t cell_cap = limits::kMemberCellCap) const;

  /// Membership table for the whole box [0..w] x [0..h], row-major with
  /// stride w+1 (index = y*(w+1)+x).
  std::vector<char> box_table(std::int64_t w, std::int64_t h,
                              std::int64_t cell_cap = limits::kMemberCellCap) const;

  /// Sum of periodic sets: generator union, re-canonicalized.
  friend PeriodicSet operator+(const PeriodicSet& a, const PeriodicSet& b);

  /// Semantic equality: mutual membership of generators. Sound and complete
  /// for finitely-generated periodic sets.
  bool sem_equal(const PeriodicSet& other) const;

  /// Irredundant generator set: drops, in lexicographic order, every
  /// generator expressible over the remaining ones. The result is the unique
  /// minimal generating set of the represented periodic set.
  PeriodicSet reduced() const;

  // Structural (canonical-form) comparison, used for deterministic ordering.
  auto operator<=>(const PeriodicSet&) const = default;

private:
  std::vector<NVec2> gens_;
};

/// Componentwise-minimal n in N^k with (sum_i n_i * gens[i])(j) >= threshold(j)
/// for each coordinate j with threshold(j) > 0. The feasible region is
/// upward-closed, so the minimal elements form a finite antichain (Dickson);
/// every minimal solution satisfies sum_i n_i <= max(0,threshold.x) +
/// max(0,threshold.y), the enumeration bound (see docs/minimal-solutions.md).
/// Coefficients of zero generators are 0. Output sorted lexicographically.
std::vector<CoeffVector> min_solutions(std::span<const NVec2> gens, IVec2 threshold,
                                       std::int64_t node_cap = limits::kMinSolutionCap);

/// Decides (per(G) + z) n N^2 subset-of per(G) for p = per(G): it suffices to
/// check G*m + z for the Dickson basis m of {n : G*n + z >= 0}, because that
/// region is upward-closed and per(G) absorbs generator additions.
/// Vacuously true when no minimal solution exists.
bool shifted_inclusion(const PeriodicSet& p, IVec2 z);

/// A finite B subset-of N^2 with B + per(G) = (v + per(G)) n N^2:
/// candidates v + G*m over the minimal solutions m of G*n >= -v, pruned (in
/// lexicographic order) of points covered by a retained point plus per(G).
/// May be empty.
std::vector<NVec2> basis(IVec2 v, const PeriodicSet& p);

}  // namespace bvass

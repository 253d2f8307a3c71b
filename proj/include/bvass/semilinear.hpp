#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bvass/model.hpp"
#include "bvass/periodic.hpp"

namespace bvass {

class Exploration;

/// Denotes state(base + per(periods)).
struct LinearSetEntry {
  StateId state;
  NVec2 base;
  PeriodicSet periods;
  auto operator<=>(const LinearSetEntry&) const = default;
};

/// Per-state union of linear sets, the final description of a reachability
/// set. Entries are kept sorted by (state, base, periods).
class SemilinearPresentation {
public:
  SemilinearPresentation() = default;
  SemilinearPresentation(std::vector<LinearSetEntry> entries, std::string model_hash);

  const std::vector<LinearSetEntry>& entries() const { return entries_; }
  const std::string& model_hash() const { return model_hash_; }

  /// Least entry index containing the configuration, if any.
  std::optional<std::size_t> member_config(const Configuration& c) const;

  /// All member configurations with both coordinates at most k.
  ConfigSet enumerate_box(std::int64_t k) const;

  /// Canonical JSON document (stable key order, no whitespace).
  std::string to_json() const;
  /// Line-based text form: `linear <state> : <bx> <by> [; <gx> <gy>]...`.
  std::string to_text() const;

  static SemilinearPresentation from_json(std::string_view text);
  static SemilinearPresentation from_text(std::string_view text);

  bool operator==(const SemilinearPresentation&) const = default;

private:
  std::vector<LinearSetEntry> entries_;
  std::string model_hash_;
};

/// Presentation of a finished exploration: one entry per non-waiting node,
/// then normalized by dropping entries covered by a retained entry of the
/// same state (base difference inside the retained periods, generators
/// included). Normalization never drops an uncovered entry.
SemilinearPresentation assemble(const Exploration& e, const std::string& model_hash);

}  // namespace bvass

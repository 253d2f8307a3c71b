#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bvass/model.hpp"
#include "bvass/semilinear.hpp"

namespace bvass {

namespace limits {
inline constexpr std::int64_t kBoundedReachConfigCap = 5'000'000;
inline constexpr std::int64_t kClosureComboCap = 500'000'000;
}  // namespace limits

/// Box-restricted Kleene underapproximation of the reachability set: least
/// fixpoint of C u (post(C) clipped to [0,k]^2). Derivations must stay inside
/// the box, so configurations outside it are discarded along the way.
struct BoxReachResult {
  ConfigSet configs;
  std::int64_t box = 0;
  bool saturated = false;
};

BoxReachResult bounded_reach(const Bvass& b, std::int64_t k,
                             std::int64_t config_cap = limits::kBoundedReachConfigCap);

enum class WitnessStatus { Witnessed, Inconclusive };

struct SoundnessEntry {
  Configuration config;
  WitnessStatus status = WitnessStatus::Inconclusive;
  std::int64_t box = 0;  // witnessing box, or the largest box tried
};

struct SoundnessReport {
  std::vector<SoundnessEntry> entries;
  std::vector<std::string> notes;

  bool all_witnessed() const;
  std::size_t inconclusive_count() const;
};

/// Searches a brute-force derivation for every presentation member in
/// [0,k]^2, doubling the oracle box from k up to k_max. Inconclusive is a
/// distinct verdict: the underapproximating oracle can never refute.
SoundnessReport check_soundness(const SemilinearPresentation& s, const Bvass& b, std::int64_t k,
                                std::int64_t k_max);

struct ClosureViolation {
  std::size_t rule_index = 0;
  std::vector<Configuration> inputs;
  Configuration produced;
};

struct ClosureReport {
  std::vector<ClosureViolation> violations;
  std::vector<std::string> notes;
};

/// Applies every rule to every distinct-state assignment of presentation
/// members inside [0,k]^2; each produced configuration landing in N^2 (any
/// magnitude) must itself be a presentation member, and so must every
/// initial configuration.
ClosureReport check_post_closure(const SemilinearPresentation& s, const Bvass& b, std::int64_t k);

/// Breadth-first closure of {(0,0)} under adding elements of z inside
/// [0,k]^2: underapproximates the prefix-sum-closed set within the box.
std::set<NVec2> perp_oracle(std::span<const IVec2> z, std::int64_t k);

}  // namespace bvass

#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bvass/vec2.hpp"

namespace bvass {

/// Name of a control state. Tokens are nonempty words over letters, digits
/// and underscore.
struct StateId {
  std::string name;
  auto operator<=>(const StateId&) const = default;
};

/// Rewriting rule (S, a, q): consumes one configuration per input state,
/// sums their points, adds the displacement and produces the output state.
/// Input states are pairwise distinct.
struct TransitionRule {
  std::vector<StateId> inputs;  // sorted, duplicate-free
  IVec2 displacement;
  StateId output;

  bool is_initial() const { return inputs.empty(); }
  bool is_unary() const { return inputs.size() == 1; }
  bool is_branching() const { return inputs.size() >= 2; }

  auto operator<=>(const TransitionRule&) const = default;
};

struct Configuration {
  StateId state;
  NVec2 point;
  auto operator<=>(const Configuration&) const = default;
};

using ConfigSet = std::set<Configuration>;

/// A 2-dimensional branching vector addition system with states.
class Bvass {
public:
  Bvass(std::set<StateId> states, std::vector<TransitionRule> rules);

  /// Parses the line-based textual format (see README). States are the union
  /// of declared names and names mentioned in rules.
  static Bvass parse(std::string_view text);

  /// Canonical textual form; parse(serialize()) reproduces the model.
  std::string serialize() const;

  /// FNV-1a digest of the canonical textual form, as 16 hex digits.
  std::string content_hash() const;

  const std::set<StateId>& states() const { return states_; }
  const std::vector<TransitionRule>& rules() const { return rules_; }

  bool is_vass() const;

private:
  std::set<StateId> states_;
  std::vector<TransitionRule> rules_;
};

/// One application of the configuration-set transformer: the union over all
/// rules of the configurations a + sum(D) produced by sets D of configs with
/// pairwise-distinct states matching the rule's input set, kept when the
/// result stays in N^2. On the empty set this yields exactly the initial
/// configurations.
ConfigSet post_step(const Bvass& b, const ConfigSet& configs);

struct VassTransition {
  StateId source;
  IVec2 displacement;
  StateId target;
  auto operator<=>(const VassTransition&) const = default;
};

/// The unary system obtained by instantiating each rule against a finite set
/// of known configurations for all but one input state.
struct InstantiatedVass {
  std::set<StateId> states;
  std::vector<VassTransition> transitions;  // sorted, duplicate-free
  ConfigSet source_configs;
};

InstantiatedVass instantiate(const Bvass& b, const ConfigSet& f);

/// |Q| times the largest negative displacement coordinate over all rules,
/// clamped at 0. Above this threshold elementary cycles of any instantiation
/// can be iterated without leaving N^2.
std::int64_t iteration_constant(const Bvass& b);

}  // namespace bvass

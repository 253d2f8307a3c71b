#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bvass/accel.hpp"
#include "bvass/model.hpp"
#include "bvass/periodic.hpp"
#include "bvass/semilinear.hpp"

namespace bvass {

/// (a, q, z, P): the displacement of the rule that produced the node, its
/// state, its point, and the periodic set of known repeatable additions.
struct NodeLabel {
  IVec2 a;
  StateId q;
  NVec2 z;
  PeriodicSet p;
};

enum class NodeStatus { Waiting, Processed, Redundant };

struct ExplorationNode {
  std::size_t id = 0;
  NodeLabel label;
  std::vector<std::size_t> parents;  // sorted; parents are Processed at creation
  NodeStatus status = NodeStatus::Waiting;
  std::optional<std::size_t> covered_by;  // set iff Redundant
};

struct ExploreStats {
  std::size_t nodes_created = 0;
  std::size_t accelerations = 0;
  std::size_t cycles_enumerated = 0;
  std::size_t redundancy_hits = 0;
};

struct ExploreConfig {
  enum class Order { Fifo, Lifo };
  Order order = Order::Fifo;
  std::size_t max_nodes = 100'000;
  std::int64_t max_cycles = 1'000'000;
  std::int64_t max_accel_points = 1'000'000;
  bool validate = false;
  /// Widens redundancy candidates from proper ancestors to every processed
  /// node of the same state.
  bool cover_any_processed = false;
};

/// The worklist's labeled acyclic graph. Parent edges run from the nodes
/// whose configurations fed a rule application to the produced node, so every
/// ancestor set is finite and ancestors of any reachable node are Processed.
class Exploration {
public:
  const std::vector<ExplorationNode>& nodes() const { return nodes_; }
  const ExplorationNode& node(std::size_t id) const { return nodes_[id]; }
  /// Mutable access, intended for tooling that perturbs explorations before
  /// re-validating them.
  ExplorationNode& mutable_node(std::size_t id) { return nodes_[id]; }
  const ExploreStats& stats() const { return stats_; }
  std::size_t waiting_count() const { return worklist_.size(); }

  /// Proper ancestors (m with m ->+ n), deduplicated, ascending ids.
  std::vector<std::size_t> proper_ancestors(std::size_t n) const;

private:
  friend Exploration init_nodes(const Bvass& b);
  friend class ExploreRun;

  std::vector<ExplorationNode> nodes_;
  std::deque<std::size_t> worklist_;
  ExploreStats stats_;
};

/// One waiting node (a, q, a, per{}) per initial rule with nonnegative
/// displacement, in rule order.
Exploration init_nodes(const Bvass& b);

/// Instantiation of b with the configurations of n's proper ancestors.
InstantiatedVass ancestor_instantiation(const Exploration& e, const Bvass& b, std::size_t n);

/// Displacements of all elementary cycles of the unary system, keyed by the
/// set of states the cycle visits; parallel transitions count as distinct
/// cycles. `counter` accumulates the number of cycles enumerated.
std::map<std::set<StateId>, std::set<IVec2>> elementary_cycle_displacements(
    const InstantiatedVass& v, std::int64_t max_cycles, std::int64_t* counter = nullptr);

/// E: elementary-cycle displacements iterable at some node s ->* n whose
/// state lies on the cycle and whose point dominates (c, c); cycles hung on a
/// proper ancestor must have nonnegative displacement. Cbar: differences
/// z_n - z_s over same-state nodes s ->* n. I = E u Cbar.
struct CycleVectors {
  std::set<IVec2> e;
  std::set<IVec2> cbar;
  std::set<IVec2> i;
  std::int64_t c_const = 0;
};

CycleVectors compute_cycle_vectors(const Exploration& e, const Bvass& b, std::size_t n,
                                   std::int64_t max_cycles, std::int64_t* counter = nullptr);

/// Least-id candidate m covering n: same state, z_n - z_m inside per(P_m),
/// and every generator of P_n inside per(P_m). That certifies
/// q_n(z_n + P_n) subset-of q_m(z_m + P_m). Candidates are proper ancestors
/// unless widened by configuration.
std::optional<std::size_t> is_redundant(const Exploration& e, std::size_t n,
                                        bool any_processed = false);

struct ExploreResult {
  Exploration exploration;
  SemilinearPresentation presentation;
};

/// The worklist algorithm: initialize, then repeatedly pop a node, accelerate
/// its periodic set with the cycle vectors, park it as redundant when covered
/// by an ancestor, otherwise expand every rule assignment that uses it.
/// Raises ResourceLimitError (carrying partial stats in the message) when a
/// configured cap is exceeded.
ExploreResult explore(const Bvass& b, const ExploreConfig& cfg = {});

struct ValidationIssue {
  std::size_t node = 0;
  int condition = 0;  // 1..3 per the exploration conditions, 4 for leaf/cover
  std::string detail;
};

/// Re-derives every condition of a finished exploration from scratch:
/// (1) parent states form a set matching a rule with the node's displacement
/// and state, (2) the node's point decomposes over the parents' points and
/// periods, (3) the periodic set equals the recomputed acceleration, and
/// (4) redundant nodes are leaves with valid cover certificates.
std::vector<ValidationIssue> validate_exploration(const Exploration& e, const Bvass& b);

}  // namespace bvass

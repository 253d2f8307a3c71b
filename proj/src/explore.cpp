#include "bvass/explore.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "bvass/error.hpp"
#include "bvass/log.hpp"

namespace bvass {

std::vector<std::size_t> Exploration::proper_ancestors(std::size_t n) const {
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<std::size_t> stack(nodes_[n].parents.begin(), nodes_[n].parents.end());
  std::vector<std::size_t> out;
  while (!stack.empty()) {
    const std::size_t m = stack.back();
    stack.pop_back();
    if (seen[m]) continue;
    seen[m] = 1;
    out.push_back(m);
    stack.insert(stack.end(), nodes_[m].parents.begin(), nodes_[m].parents.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Exploration init_nodes(const Bvass& b) {
  Exploration e;
  for (const TransitionRule& rule : b.rules()) {
    if (!rule.is_initial() || !rule.displacement.nonneg()) continue;
    ExplorationNode node;
    node.id = e.nodes_.size();
    node.label =
        NodeLabel{rule.displacement, rule.output, *as_point(rule.displacement), PeriodicSet()};
    e.nodes_.push_back(std::move(node));
    e.worklist_.push_back(e.nodes_.back().id);
    ++e.stats_.nodes_created;
  }
  return e;
}

InstantiatedVass ancestor_instantiation(const Exploration& e, const Bvass& b, std::size_t n) {
  ConfigSet configs;
  for (std::size_t m : e.proper_ancestors(n)) {
    configs.insert(Configuration{e.node(m).label.q, e.node(m).label.z});
  }
  return instantiate(b, configs);
}

namespace {

struct CycleSearch {
  const InstantiatedVass& v;
  std::map<StateId, std::vector<std::size_t>> outgoing;
  std::int64_t max_cycles;
  std::int64_t count = 0;
  std::map<std::set<StateId>, std::set<IVec2>> found;

  std::vector<StateId> path_states;
  IVec2 path_sum{0, 0};

  CycleSearch(const InstantiatedVass& vass, std::int64_t cap) : v(vass), max_cycles(cap) {
    for (std::size_t i = 0; i < v.transitions.size(); ++i) {
      outgoing[v.transitions[i].source].push_back(i);
    }
  }

  // Enumerates every elementary cycle exactly once by anchoring it at its
  // least state: intermediate states must be strictly greater than the root.
  void run() {
    for (const auto& [root, _] : outgoing) {
      path_states = {root};
      path_sum = {0, 0};
      dfs(root, root);
    }
  }

  void dfs(const StateId& root, const StateId& at) {
    const auto it = outgoing.find(at);
    if (it == outgoing.end()) return;
    for (std::size_t idx : it->second) {
      const VassTransition& t = v.transitions[idx];
      const IVec2 sum = path_sum + t.displacement;
      if (t.target == root) {
        if (++count > max_cycles) {
          throw ResourceLimitError("elementary-cycle enumeration exceeded " +
                                   std::to_string(max_cycles) + " cycles");
        }
        found[std::set<StateId>(path_states.begin(), path_states.end())].insert(sum);
        continue;
      }
      if (t.target < root) continue;
      if (std::find(path_states.begin(), path_states.end(), t.target) != path_states.end()) {
        continue;
      }
      path_states.push_back(t.target);
      const IVec2 saved = path_sum;
      path_sum = sum;
      dfs(root, t.target);
      path_sum = saved;
      path_states.pop_back();
    }
  }
};

}  // namespace

std::map<std::set<StateId>, std::set<IVec2>> elementary_cycle_displacements(
    const InstantiatedVass& v, std::int64_t max_cycles, std::int64_t* counter) {
  CycleSearch search(v, max_cycles);
  search.run();
  if (counter) *counter += search.count;
  return search.found;
}

CycleVectors compute_cycle_vectors(const Exploration& e, const Bvass& b, std::size_t n,
                                   std::int64_t max_cycles, std::int64_t* counter) {
  CycleVectors out;
  out.c_const = iteration_constant(b);
  const IVec2 threshold{out.c_const, out.c_const};

  const NodeLabel& label = e.node(n).label;
  std::vector<std::size_t> scope = e.proper_ancestors(n);
  scope.push_back(n);

  // States of eligible iteration anchors: nodes s ->* n with z_s >= (c, c).
  std::set<StateId> anchor_states;
  for (std::size_t s : scope) {
    if (cw_leq(threshold, e.node(s).label.z.as_ivec())) {
      anchor_states.insert(e.node(s).label.q);
    }
  }
  const bool self_anchored = cw_leq(threshold, label.z.as_ivec());

  const InstantiatedVass vass = ancestor_instantiation(e, b, n);
  for (const auto& [visited, disps] : elementary_cycle_displacements(vass, max_cycles, counter)) {
    const bool anchored_somewhere =
        std::any_of(visited.begin(), visited.end(),
                    [&](const StateId& q) { return anchor_states.contains(q); });
    const bool anchored_at_n = self_anchored && visited.contains(label.q);
    for (IVec2 d : disps) {
      if ((d.nonneg() && anchored_somewhere) || anchored_at_n) {
        out.e.insert(d);
      }
    }
  }

  for (std::size_t s : scope) {
    if (e.node(s).label.q == label.q) {
      out.cbar.insert(label.z - e.node(s).label.z);
    }
  }

  out.i = out.e;
  out.i.insert(out.cbar.begin(), out.cbar.end());
  return out;
}

std::optional<std::size_t> is_redundant(const Exploration& e, std::size_t n, bool any_processed) {
  const NodeLabel& label = e.node(n).label;
  std::vector<std::size_t> candidates;
  if (any_processed) {
    for (const ExplorationNode& m : e.nodes()) {
      if (m.id != n && m.status == NodeStatus::Processed) candidates.push_back(m.id);
    }
  } else {
    candidates = e.proper_ancestors(n);
  }
  for (std::size_t m : candidates) {
    const NodeLabel& cover = e.node(m).label;
    if (cover.q != label.q) continue;
    if (!cover.p.contains(label.z - cover.z)) continue;
    const bool periods_included =
        std::all_of(label.p.generators().begin(), label.p.generators().end(),
                    [&](NVec2 g) { return cover.p.contains(g); });
    if (periods_included) return m;
  }
  return std::nullopt;
}

class ExploreRun {
public:
  ExploreRun(const Bvass& b, const ExploreConfig& cfg) : b_(b), cfg_(cfg) {}

  Exploration run() {
    Exploration e = init_nodes(b_);
    try {
      loop(e);
    } catch (const ResourceLimitError& ex) {
      throw ResourceLimitError(std::string(ex.what()) + " [nodes=" +
                               std::to_string(e.stats_.nodes_created) + " accelerations=" +
                               std::to_string(e.stats_.accelerations) + " cycles=" +
                               std::to_string(e.stats_.cycles_enumerated) +
                               " while processing node " + std::to_string(current_) + "]");
    }
    return e;
  }

private:
  void loop(Exploration& e) {
    std::map<StateId, std::vector<std::size_t>> processed_by_state;
    while (!e.worklist_.empty()) {
      std::size_t n;
      if (cfg_.order == ExploreConfig::Order::Fifo) {
        n = e.worklist_.front();
        e.worklist_.pop_front();
      } else {
        n = e.worklist_.back();
        e.worklist_.pop_back();
      }
      current_ = n;

      std::int64_t cycle_count = 0;
      const CycleVectors vectors = compute_cycle_vectors(e, b_, n, cfg_.max_cycles, &cycle_count);
      e.stats_.cycles_enumerated += static_cast<std::size_t>(cycle_count);
      const std::vector<IVec2> iterable(vectors.i.begin(), vectors.i.end());
      AccelLimits accel_limits;
      accel_limits.max_points = cfg_.max_accel_points;
      e.nodes_[n].label.p = accelerate(iterable, e.node(n).label.p, accel_limits);
      ++e.stats_.accelerations;

      if (const auto cover = is_redundant(e, n, cfg_.cover_any_processed)) {
        e.nodes_[n].status = NodeStatus::Redundant;
        e.nodes_[n].covered_by = cover;
        ++e.stats_.redundancy_hits;
        BVASS_LOG_DEBUG("node " << n << " redundant, covered by " << *cover);
        continue;
      }

      e.nodes_[n].status = NodeStatus::Processed;
      processed_by_state[e.node(n).label.q].push_back(n);
      for (const TransitionRule& rule : b_.rules()) {
        if (rule.is_initial()) continue;
        expand_rule(e, rule, n, processed_by_state);
      }
      BVASS_LOG_DEBUG("node " << n << " processed " << e.node(n).label.q.name << to_string(e.node(n).label.z) << " gens=" << e.node(n).label.p.generators().size() << " worklist=" << e.worklist_.size());
    }
  }

  // Creates the children of all assignments of processed nodes to the rule's
  // input states in which `pivot` participates. Assignments enumerate states
  // in sorted order and candidate nodes in creation order; children of one
  // assignment follow the basis in lexicographic order.
  void expand_rule(Exploration& e, const TransitionRule& rule, std::size_t pivot,
                   const std::map<StateId, std::vector<std::size_t>>& by_state) {
    std::vector<std::size_t> chosen;
    const std::function<void(std::size_t, bool)> choose = [&](std::size_t index,
                                                              bool pivot_used) {
      if (index == rule.inputs.size()) {
        if (pivot_used) emit(e, rule, chosen);
        return;
      }
      const auto it = by_state.find(rule.inputs[index]);
      if (it == by_state.end()) return;
      for (std::size_t m : it->second) {
        chosen.push_back(m);
        choose(index + 1, pivot_used || m == pivot);
        chosen.pop_back();
      }
    };
    choose(0, false);
  }

  void emit(Exploration& e, const TransitionRule& rule, const std::vector<std::size_t>& chosen) {
    IVec2 v = rule.displacement;
    PeriodicSet periods;
    for (std::size_t m : chosen) {
      v = v + e.node(m).label.z.as_ivec();
      periods = periods + e.node(m).label.p;
    }
    std::vector<std::size_t> parents = chosen;
    std::sort(parents.begin(), parents.end());
    for (NVec2 point : basis(v, periods)) {
      if (e.nodes_.size() >= cfg_.max_nodes) {
        throw ResourceLimitError("exploration exceeded " + std::to_string(cfg_.max_nodes) +
                                 " nodes");
      }
      ExplorationNode node;
      node.id = e.nodes_.size();
      node.label = NodeLabel{rule.displacement, rule.output, point, periods};
      node.parents = parents;
      e.nodes_.push_back(std::move(node));
      ++e.stats_.nodes_created;
      e.worklist_.push_back(e.nodes_.back().id);
    }
  }

  const Bvass& b_;
  const ExploreConfig& cfg_;
  std::size_t current_ = 0;
};

ExploreResult explore(const Bvass& b, const ExploreConfig& cfg) {
  ExploreRun run(b, cfg);
  Exploration e = run.run();
  SemilinearPresentation presentation = assemble(e, b.content_hash());
  return ExploreResult{std::move(e), std::move(presentation)};
}

std::vector<ValidationIssue> validate_exploration(const Exploration& e, const Bvass& b) {
  std::vector<ValidationIssue> issues;
  const auto report = [&](std::size_t node, int condition, std::string detail) {
    issues.push_back(ValidationIssue{node, condition, std::move(detail)});
  };

  std::vector<char> has_children(e.nodes().size(), 0);
  for (const ExplorationNode& node : e.nodes()) {
    for (std::size_t m : node.parents) has_children[m] = 1;
  }

  for (const ExplorationNode& node : e.nodes()) {
    if (node.status == NodeStatus::Waiting) {
      report(node.id, 0, "exploration is not finished: node is still waiting");
      continue;
    }
    const NodeLabel& label = node.label;

    // Condition 1: the parent states form a set matching a rule.
    std::vector<StateId> parent_states;
    for (std::size_t m : node.parents) parent_states.push_back(e.node(m).label.q);
    std::sort(parent_states.begin(), parent_states.end());
    const bool distinct =
        std::adjacent_find(parent_states.begin(), parent_states.end()) == parent_states.end();
    if (!distinct) {
      report(node.id, 1, "two parents share a state");
    } else {
      const bool matched =
          std::any_of(b.rules().begin(), b.rules().end(), [&](const TransitionRule& rule) {
            return rule.inputs == parent_states && rule.displacement == label.a &&
                   rule.output == label.q;
          });
      if (!matched) report(node.id, 1, "no rule matches (parent states, displacement, state)");
    }

    // Condition 2: z decomposes over the parent points and periods.
    IVec2 w = label.z.as_ivec() - label.a;
    PeriodicSet parent_periods;
    for (std::size_t m : node.parents) {
      w = w - e.node(m).label.z.as_ivec();
      parent_periods = parent_periods + e.node(m).label.p;
    }
    if (!parent_periods.contains(w)) {
      report(node.id, 2, "point does not decompose over the parent labels: residue " +
                             to_string(w));
    }

    // Condition 3: the periodic set equals the acceleration recomputed from
    // scratch (ancestor points never change after creation, so the cycle
    // vectors recompute to their run-time values).
    const CycleVectors vectors =
        compute_cycle_vectors(e, b, node.id, std::numeric_limits<std::int64_t>::max());
    const std::vector<IVec2> iterable(vectors.i.begin(), vectors.i.end());
    if (!label.p.sem_equal(accelerate(iterable, parent_periods))) {
      report(node.id, 3, "periodic set differs from the recomputed acceleration");
    }

    if (node.status == NodeStatus::Redundant) {
      if (has_children[node.id]) report(node.id, 4, "redundant node has children");
      if (!node.covered_by) {
        report(node.id, 4, "redundant node lacks a covering node");
      } else {
        const NodeLabel& cover = e.node(*node.covered_by).label;
        const bool cert =
            cover.q == label.q && cover.p.contains(label.z - cover.z) &&
            std::all_of(label.p.generators().begin(), label.p.generators().end(),
                        [&](NVec2 g) { return cover.p.contains(g); });
        if (!cert) report(node.id, 4, "cover certificate does not hold");
        if (e.node(*node.covered_by).status != NodeStatus::Processed) {
          report(node.id, 4, "covering node is not processed");
        }
      }
    }
  }
  return issues;
}

}  // namespace bvass

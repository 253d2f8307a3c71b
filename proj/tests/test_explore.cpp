#include <doctest.h>

#include <limits>

#include "bvass/error.hpp"
#include "bvass/explore.hpp"
#include "bvass/oracle.hpp"
#include "helpers.hpp"

using namespace bvass;
using bvass::testing::config;

namespace {

const char* kSelfLoop = "rule p <- : 0 0\nrule p <- p : 1 0\n";
const char* kExampleSubset = "rule p <- : 4 4\n"
                             "rule q <- p : -1 0\n"
                             "rule r <- p,q : 0 0\n";

}  // namespace

TEST_CASE("initial nodes") {
  const Bvass example = Bvass::parse(kExampleSubset);
  const Exploration e = init_nodes(example);
  REQUIRE(e.nodes().size() == 1);
  CHECK(e.node(0).label.a == IVec2{4, 4});
  CHECK(e.node(0).label.q == StateId{"p"});
  CHECK(e.node(0).label.z == NVec2{4, 4});
  CHECK(e.node(0).label.p.trivial());
  CHECK(e.node(0).status == NodeStatus::Waiting);

  CHECK(init_nodes(Bvass::parse("rule q <- p : 1 1\n")).nodes().empty());
  CHECK(init_nodes(Bvass::parse("states p\nrule p <- : -1 0\n")).nodes().empty());
}

TEST_CASE("ancestor instantiation") {
  const Bvass example = Bvass::parse(kExampleSubset);
  const ExploreResult result = explore(example);
  const Exploration& e = result.exploration;
  REQUIRE(e.nodes().size() == 3);

  // Root: no proper ancestors, so only unary rules with empty context.
  const InstantiatedVass root_vass = ancestor_instantiation(e, example, 0);
  CHECK(root_vass.transitions ==
        std::vector<VassTransition>{VassTransition{StateId{"p"}, {-1, 0}, StateId{"q"}}});

  // The r-node sees both p(4,4) and q(3,4).
  const InstantiatedVass r_vass = ancestor_instantiation(e, example, 2);
  CHECK(std::find(r_vass.transitions.begin(), r_vass.transitions.end(),
                  VassTransition{StateId{"q"}, {4, 4}, StateId{"r"}}) != r_vass.transitions.end());
  CHECK(std::find(r_vass.transitions.begin(), r_vass.transitions.end(),
                  VassTransition{StateId{"p"}, {3, 4}, StateId{"r"}}) != r_vass.transitions.end());
}

TEST_CASE("elementary cycle enumeration") {
  constexpr std::int64_t kNoCap = std::numeric_limits<std::int64_t>::max();
  InstantiatedVass v;
  v.transitions = {VassTransition{StateId{"p"}, {1, 0}, StateId{"p"}}};
  auto cycles = elementary_cycle_displacements(v, kNoCap);
  CHECK(cycles == decltype(cycles){{{StateId{"p"}}, {IVec2{1, 0}}}});

  v.transitions = {VassTransition{StateId{"p"}, {1, -1}, StateId{"q"}},
                   VassTransition{StateId{"q"}, {0, 1}, StateId{"p"}}};
  cycles = elementary_cycle_displacements(v, kNoCap);
  CHECK(cycles == decltype(cycles){{{StateId{"p"}, StateId{"q"}}, {IVec2{1, 0}}}});

  v.transitions = {VassTransition{StateId{"p"}, {1, 0}, StateId{"p"}},
                   VassTransition{StateId{"p"}, {0, 1}, StateId{"p"}}};
  cycles = elementary_cycle_displacements(v, kNoCap);
  CHECK(cycles == decltype(cycles){{{StateId{"p"}}, {IVec2{0, 1}, IVec2{1, 0}}}});

  std::int64_t counted = 0;
  (void)elementary_cycle_displacements(v, kNoCap, &counted);
  CHECK(counted == 2);
  CHECK_THROWS_AS((void)elementary_cycle_displacements(v, 1), ResourceLimitError);
}

TEST_CASE("cycle vectors of the self-loop root") {
  const Bvass b = Bvass::parse(kSelfLoop);
  const Exploration e = init_nodes(b);
  const CycleVectors vectors =
      compute_cycle_vectors(e, b, 0, std::numeric_limits<std::int64_t>::max());
  CHECK(vectors.c_const == 0);
  CHECK(vectors.e == std::set<IVec2>{{1, 0}});
  CHECK(vectors.cbar == std::set<IVec2>{{0, 0}});
  CHECK(vectors.i == std::set<IVec2>{{0, 0}, {1, 0}});
}

TEST_CASE("anchors below the iteration constant contribute no cycles") {
  // c = 2 here, and the only node sits at (1, 2), one short on the first
  // coordinate, so its self-loop is not iterable.
  const Bvass b = Bvass::parse("rule p <- : 1 2\n"
                               "rule p <- p : 1 0\n"
                               "rule q <- p : 0 -1\n");
  CHECK(iteration_constant(b) == 2);
  const Exploration e = init_nodes(b);
  const CycleVectors vectors =
      compute_cycle_vectors(e, b, 0, std::numeric_limits<std::int64_t>::max());
  CHECK(vectors.e.empty());
  CHECK(vectors.cbar == std::set<IVec2>{{0, 0}});
}

TEST_CASE("consecutive differences feed the cycle vectors") {
  const Bvass b = Bvass::parse("rule p <- : 1 2\nrule p <- p : 2 0\n");
  const ExploreResult result = explore(b);
  const Exploration& e = result.exploration;
  REQUIRE(e.nodes().size() == 2);
  CHECK(e.node(1).label.z == NVec2{3, 2});
  const CycleVectors vectors =
      compute_cycle_vectors(e, b, 1, std::numeric_limits<std::int64_t>::max());
  CHECK(vectors.cbar.contains(IVec2{2, 0}));
  CHECK(vectors.cbar.contains(IVec2{0, 0}));
}

TEST_CASE("redundancy certificates") {
  const Bvass b = Bvass::parse(kSelfLoop);
  const ExploreResult result = explore(b);
  const Exploration& e = result.exploration;
  REQUIRE(e.nodes().size() == 2);
  CHECK(e.node(1).status == NodeStatus::Redundant);
  CHECK(e.node(1).covered_by == std::size_t{0});

  // Weakening the ancestor's periodic set invalidates the certificate.
  Exploration copy = e;
  copy.mutable_node(0).label.p = PeriodicSet({{2, 0}});
  CHECK_FALSE(is_redundant(copy, 1).has_value());

  // A node without a same-state ancestor is never redundant.
  const ExploreResult example = explore(Bvass::parse(kExampleSubset));
  CHECK_FALSE(is_redundant(example.exploration, 2).has_value());
}

TEST_CASE("expansion produces basis children with parent edges") {
  const Bvass b = Bvass::parse(kSelfLoop);
  const ExploreResult result = explore(b);
  const Exploration& e = result.exploration;
  REQUIRE(e.nodes().size() == 2);
  CHECK(e.node(1).label.a == IVec2{1, 0});
  CHECK(e.node(1).label.q == StateId{"p"});
  CHECK(e.node(1).label.z == NVec2{1, 0});
  CHECK(e.node(1).label.p.generators() == std::vector<NVec2>{{1, 0}});
  CHECK(e.node(1).parents == std::vector<std::size_t>{0});
}

TEST_CASE("branching rules wait for all input states") {
  // Only p-nodes exist after the root, so the branching rule cannot fire for
  // it; the q-node then enables it.
  const Bvass b = Bvass::parse(kExampleSubset);
  const ExploreResult result = explore(b);
  const Exploration& e = result.exploration;
  REQUIRE(e.nodes().size() == 3);
  CHECK(e.node(2).label.q == StateId{"r"});
  CHECK(e.node(2).parents == std::vector<std::size_t>{0, 1});
}

TEST_CASE("an empty basis creates no child") {
  const Bvass b = Bvass::parse("rule p <- : 4 4\nrule q <- p : -5 -5\n");
  const ExploreResult result = explore(b);
  CHECK(result.exploration.nodes().size() == 1);
  CHECK(result.presentation.entries().size() == 1);
}

TEST_CASE("exploration of the self-loop model") {
  const Bvass b = Bvass::parse(kSelfLoop);
  const ExploreResult result = explore(b);
  CHECK(result.exploration.nodes().size() == 2);
  CHECK(result.exploration.waiting_count() == 0);
  const ConfigSet box = result.presentation.enumerate_box(5);
  ConfigSet expected;
  for (std::int64_t i = 0; i <= 5; ++i) expected.insert(config("p", i, 0));
  CHECK(box == expected);
}

TEST_CASE("exploration of the running example") {
  const ExploreResult result = explore(Bvass::parse(kExampleSubset));
  CHECK(result.presentation.member_config(config("p", 4, 4)).has_value());
  CHECK(result.presentation.member_config(config("q", 3, 4)).has_value());
  CHECK(result.presentation.member_config(config("r", 7, 8)).has_value());
  CHECK_FALSE(result.presentation.member_config(config("r", 7, 7)).has_value());
}

TEST_CASE("a model without initial rules explores to nothing") {
  const ExploreResult result = explore(Bvass::parse("rule q <- p : 1 1\n"));
  CHECK(result.exploration.nodes().empty());
  CHECK(result.presentation.entries().empty());
}

TEST_CASE("node cap aborts with a resource error") {
  ExploreConfig cfg;
  cfg.max_nodes = 2;
  const Bvass b = Bvass::parse("rule p <- : 0 0\n"
                               "rule q <- p : 1 0\n"
                               "rule p <- q : 0 1\n");
  CHECK_THROWS_AS((void)explore(b, cfg), ResourceLimitError);
}

TEST_CASE("exploration is deterministic") {
  const Bvass b = Bvass::parse(kExampleSubset);
  const ExploreResult a = explore(b);
  const ExploreResult c = explore(b);
  REQUIRE(a.exploration.nodes().size() == c.exploration.nodes().size());
  for (std::size_t i = 0; i < a.exploration.nodes().size(); ++i) {
    const ExplorationNode& na = a.exploration.node(i);
    const ExplorationNode& nc = c.exploration.node(i);
    CHECK(na.label.a == nc.label.a);
    CHECK(na.label.q == nc.label.q);
    CHECK(na.label.z == nc.label.z);
    CHECK(na.label.p == nc.label.p);
    CHECK(na.parents == nc.parents);
    CHECK(na.status == nc.status);
    CHECK(na.covered_by == nc.covered_by);
  }
  CHECK(a.presentation == c.presentation);
}

TEST_CASE("worklist order is configurable and both orders validate") {
  const Bvass b = Bvass::parse("rule p <- : 1 0\n"
                               "rule q <- : 0 1\n"
                               "rule p <- p : 1 0\n"
                               "rule q <- q : 0 1\n");
  ExploreConfig lifo;
  lifo.order = ExploreConfig::Order::Lifo;
  const ExploreResult a = explore(b);
  const ExploreResult c = explore(b, lifo);
  CHECK(validate_exploration(a.exploration, b).empty());
  CHECK(validate_exploration(c.exploration, b).empty());
  CHECK(a.presentation == c.presentation);
}

TEST_CASE("node points are reachable in the bounded oracle") {
  for (const char* text : {kSelfLoop, kExampleSubset}) {
    const Bvass b = Bvass::parse(text);
    const ExploreResult result = explore(b);
    const BoxReachResult reach = bounded_reach(b, 40);
    for (const ExplorationNode& node : result.exploration.nodes()) {
      if (node.label.z.x > 40 || node.label.z.y > 40) continue;
      CAPTURE(text);
      CAPTURE(node.id);
      CHECK(reach.configs.contains(Configuration{node.label.q, node.label.z}));
    }
  }
}

TEST_CASE("redundant nodes are leaves with processed covers") {
  const char* models[] = {kSelfLoop, kExampleSubset,
                          "rule p <- : 0 0\nrule q <- p : 1 0\nrule p <- q : 0 1\n"};
  for (const char* text : models) {
    const Bvass b = Bvass::parse(text);
    const ExploreResult result = explore(b);
    const Exploration& e = result.exploration;
    for (const ExplorationNode& node : e.nodes()) {
      for (std::size_t parent : node.parents) {
        CHECK(e.node(parent).status == NodeStatus::Processed);
        CHECK(parent < node.id);
      }
      if (node.status == NodeStatus::Redundant) {
        REQUIRE(node.covered_by.has_value());
        CHECK(e.node(*node.covered_by).status == NodeStatus::Processed);
      }
    }
  }
}

TEST_CASE("validation accepts explorer output and flags corruption") {
  const Bvass b = Bvass::parse(kSelfLoop);
  const ExploreResult result = explore(b);
  CHECK(validate_exploration(result.exploration, b).empty());

  Exploration shifted = result.exploration;
  shifted.mutable_node(1).label.z = NVec2{1, 1};
  const auto issues_z = validate_exploration(shifted, b);
  CHECK(std::any_of(issues_z.begin(), issues_z.end(),
                    [](const ValidationIssue& i) { return i.condition == 2; }));

  Exploration stripped = result.exploration;
  stripped.mutable_node(1).label.p = PeriodicSet();
  const auto issues_p = validate_exploration(stripped, b);
  CHECK(std::any_of(issues_p.begin(), issues_p.end(),
                    [](const ValidationIssue& i) { return i.condition == 3; }));
}

// Copyright 2026 The softgait Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "softgait.hpp"

namespace softgait {
namespace {

using testing::tabletop_graph;
using testing::three_limb;

std::vector<NodeId> nodes_of(const RobotSpec& spec, std::vector<const char*> states) {
  std::vector<NodeId> out;
  for (const char* s : states) out.push_back(parse_node(spec, s));
  return out;
}

TransitionGraph complete(int n) {
  return build_complete_graph(RobotSpec(std::vector<SubsystemSpec>{{"a", n}}), {});
}

std::set<std::vector<int>> as_sets(const CycleBasis& basis) {
  std::set<std::vector<int>> out;
  for (const auto& c : basis.cycles) {
    std::vector<int> v;
    for (NodeId n : c.nodes) v.push_back(n.index);
    out.insert(v);
  }
  return out;
}

TEST(CycleBasis, CountExamples) {
  EXPECT_EQ(enumerate_simple_cycles(complete(4)).size(), 20u);
  EXPECT_EQ(enumerate_simple_cycles(tabletop_graph()).size(), 16064u);
  const auto two = enumerate_simple_cycles(complete(2));
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two.cycles[0].nodes, (std::vector<NodeId>{NodeId{1}, NodeId{2}}));
  EXPECT_EQ(two.cycles[0].length(), 2);
}

TEST(CycleBasis, CountMatchesFormula) {
  for (int n = 2; n <= 8; ++n) {
    EXPECT_EQ(static_cast<std::int64_t>(enumerate_simple_cycles(complete(n)).size()),
              testing::complete_digraph_cycle_count(n))
        << "n=" << n;
  }
  EXPECT_EQ(testing::complete_digraph_cycle_count(4), 20);
  EXPECT_EQ(testing::complete_digraph_cycle_count(8), 16064);
}

TEST(CycleBasis, MatchesDfsOracleOnCompleteGraphs) {
  for (int n = 2; n <= 5; ++n) {
    const auto g = complete(n);
    EXPECT_EQ(as_sets(enumerate_simple_cycles(g)), testing::brute_force_cycles(g));
  }
}

TEST(CycleBasis, MatchesDfsOracleOnReducedGraphs) {
  std::mt19937 rng(5);
  std::bernoulli_distribution keep(0.6);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 3;
    const auto g = complete(n);
    std::vector<int> drop_arcs;
    for (int id = 1; id <= g.arc_count(); ++id) {
      if (!keep(rng)) drop_arcs.push_back(id);
    }
    std::vector<NodeId> drop_nodes;
    if (trial % 4 == 0) drop_nodes.push_back(NodeId{1 + trial % n});
    const auto reduced = g.without(drop_nodes, drop_arcs);
    const auto basis = enumerate_simple_cycles(reduced);
    EXPECT_EQ(as_sets(basis), testing::brute_force_cycles(reduced));
    for (const auto& c : basis.cycles) {
      for (NodeId v : drop_nodes) EXPECT_FALSE(c.contains(v));
    }
  }
}

TEST(CycleBasis, FaultGraphExcludesDisabledNodes) {
  const auto fault = disable_subsystem(tabletop_graph(), 2, 0);
  const auto basis = enumerate_simple_cycles(fault);
  EXPECT_EQ(basis.size(), 20u);
  EXPECT_EQ(as_sets(basis), testing::brute_force_cycles(fault));
  for (const auto& c : basis.cycles) {
    for (int bad : {3, 4, 7, 8}) EXPECT_FALSE(c.contains(NodeId{bad}));
  }
}

TEST(CycleBasis, DeterministicOrder) {
  const auto basis = enumerate_simple_cycles(complete(5));
  for (std::size_t i = 1; i < basis.size(); ++i) {
    const auto& a = basis.cycles[i - 1];
    const auto& b = basis.cycles[i];
    EXPECT_TRUE(a.length() < b.length() ||
                (a.length() == b.length() && a.nodes < b.nodes));
  }
  EXPECT_EQ(enumerate_simple_cycles(complete(5)).cycles, basis.cycles);
}

TEST(CycleBasis, IncidenceExamples) {
  const auto g4 = complete(4);
  const auto c = cycle_incidence({NodeId{1}, NodeId{2}, NodeId{3}, NodeId{4}}, g4);
  std::vector<int> expected(12, 0);
  for (auto [u, v] : {std::pair{1, 2}, {2, 3}, {3, 4}, {4, 1}}) {
    expected[static_cast<std::size_t>(*g4.arc_id(NodeId{u}, NodeId{v}) - 1)] = 1;
  }
  EXPECT_EQ(c, expected);
  // Lexicographic arc numbering puts those arcs at 1, 5, 9, 10.
  EXPECT_EQ(c, (std::vector<int>{1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0}));
  EXPECT_EQ(cycle_incidence({NodeId{1}, NodeId{2}}, complete(2)),
            (std::vector<int>{1, 1}));
  // Rotations describe the same cycle.
  EXPECT_EQ(cycle_incidence({NodeId{3}, NodeId{4}, NodeId{1}, NodeId{2}}, g4), c);
}

TEST(CycleBasis, InvalidCyclesRejected) {
  const auto g4 = complete(4);
  EXPECT_THROW(cycle_incidence({NodeId{1}, NodeId{2}, NodeId{1}, NodeId{3}}, g4),
               InvalidCycleError);
  EXPECT_THROW(cycle_incidence({NodeId{1}}, g4), InvalidCycleError);
  EXPECT_THROW(cycle_incidence({NodeId{1}, NodeId{5}}, g4), InvalidCycleError);
  const auto cut = g4.without({}, {*g4.arc_id(NodeId{2}, NodeId{3})});
  EXPECT_THROW(cycle_incidence({NodeId{1}, NodeId{2}, NodeId{3}}, cut),
               InvalidCycleError);
  const auto no_node = g4.without({NodeId{3}}, {});
  EXPECT_THROW(cycle_incidence({NodeId{1}, NodeId{3}}, no_node), InvalidCycleError);
}

TEST(CycleBasis, EnumeratedCyclesRevalidate) {
  const auto g = disable_subsystem(tabletop_graph(), 3, 1);
  const auto pruned = prune_arcs(g, {0.5, 0.5, 0.5});
  for (const auto& graph : {g, pruned}) {
    const auto basis = enumerate_simple_cycles(graph);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& c = basis.cycles[i];
      const auto inc = cycle_incidence(c.nodes, graph);
      EXPECT_EQ(std::accumulate(inc.begin(), inc.end(), 0),
                static_cast<int>(c.nodes.size()));
      EXPECT_EQ(make_cycle(c.nodes, graph), c);
      EXPECT_EQ(cycle_reward(graph.rewards(), inc), basis.cycle_rewards[i]);
    }
  }
}

TEST(CycleBasis, RewardExamples) {
  const auto g = tabletop_graph();
  const RobotSpec spec = three_limb();
  auto reward = [&](std::vector<const char*> states) {
    return cycle_reward(g.rewards(), cycle_incidence(nodes_of(spec, states), g));
  };
  EXPECT_EQ(reward({"000", "001", "111", "100"}), (RewardVector{8.5, 0.5, 0}));
  EXPECT_EQ(reward({"111", "101", "110"}), (RewardVector{6.5, 0, 2}));
  const RewardMatrix zeros(56);
  EXPECT_EQ(cycle_reward(zeros, cycle_incidence(nodes_of(spec, {"000", "111"}), g)),
            RewardVector{});
  EXPECT_THROW(cycle_reward(zeros, std::vector<int>(12, 0)), DimensionMismatchError);
}

TEST(CycleBasis, RewardIsLinearInMatrix) {
  std::mt19937 rng(9);
  const auto g1 = testing::random_quarter_graph(5, rng);
  const auto g2 = testing::random_quarter_graph(5, rng);
  RewardMatrix sum(g1.rewards().size());
  for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = g1.rewards()[k] + g2.rewards()[k];
  const auto basis = enumerate_simple_cycles(g1);
  for (const auto& c : basis.cycles) {
    const auto inc = c.incidence(g1.arc_count());
    EXPECT_EQ(cycle_reward(sum, inc),
              cycle_reward(g1.rewards(), inc) + cycle_reward(g2.rewards(), inc));
  }
}

TEST(CycleBasis, CapReportsPartialCount) {
  try {
    enumerate_simple_cycles(complete(6), 100);
    FAIL() << "expected ResourceLimitError";
  } catch (const ResourceLimitError& e) {
    EXPECT_GE(e.partial_count(), 100u);
  }
  EXPECT_EQ(enumerate_simple_cycles(complete(4), 20).size(), 20u);
}

TEST(CycleBasis, EmptyWhenNoArcs) {
  const auto single = disable_subsystem(complete(2), 1, 0);
  EXPECT_TRUE(enumerate_simple_cycles(single).empty());
}

TEST(CycleBasis, JsonListsOneBasedIndices) {
  const auto basis = enumerate_simple_cycles(disable_subsystem(tabletop_graph(), 2, 0));
  const auto j = to_json(basis, three_limb());
  ASSERT_EQ(j.size(), basis.size());
  EXPECT_EQ(j[0]["index"], 1);
  EXPECT_EQ(j[0]["nodes"][0], "000");
  EXPECT_EQ(format_cycle(three_limb(), basis.cycles[0]), "000 → 001 → 000");
}

}  // namespace
}  // namespace softgait

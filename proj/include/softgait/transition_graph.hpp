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

#ifndef SOFTGAIT_TRANSITION_GRAPH_HPP_
#define SOFTGAIT_TRANSITION_GRAPH_HPP_

// Directed graph of state transitions with reward-vector arc weights.
//
// Arcs of the complete graph are numbered 1..n(n-1) in (from, to)
// lexicographic order. Graphs are immutable snapshots: pruning and fault
// isolation return a new graph with some nodes/arcs disabled, and the arc
// numbering never changes.

#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "softgait/errors.hpp"
#include "softgait/reward.hpp"
#include "softgait/reward_learning.hpp"
#include "softgait/state_space.hpp"

namespace softgait {

struct Arc {
  int id = 0;
  NodeId from;
  NodeId to;
};

// Column k-1 holds the reward of arc k.
using RewardMatrix = std::vector<RewardVector>;

class TransitionGraph {
 public:
  TransitionGraph() = default;

  // Arcs must be listed with ids 1..P in order and carry no self-loops.
  TransitionGraph(RobotSpec spec, std::vector<Arc> arcs, RewardMatrix rewards)
      : spec_(std::move(spec)), arcs_(std::move(arcs)),
        rewards_(std::move(rewards)) {
    const int n = spec_.state_count();
    if (rewards_.size() != arcs_.size()) {
      throw DimensionMismatchError("reward matrix has " +
                                   std::to_string(rewards_.size()) +
                                   " columns for " +
                                   std::to_string(arcs_.size()) + " arcs");
    }
    node_enabled_.assign(static_cast<std::size_t>(n), true);
    arc_enabled_.assign(arcs_.size(), true);
    arc_lookup_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      const Arc& a = arcs_[k];
      if (a.id != static_cast<int>(k) + 1) {
        throw DataError("arc ids must run 1..P in order");
      }
      if (a.from.index < 1 || a.from.index > n || a.to.index < 1 ||
          a.to.index > n || a.from == a.to) {
        throw DataError("arc " + std::to_string(a.id) + " has invalid endpoints");
      }
      int& slot = arc_lookup_[lookup_index(a.from, a.to)];
      if (slot != 0) {
        throw DataError("duplicate arc " + std::to_string(a.from.index) +
                        "->" + std::to_string(a.to.index));
      }
      slot = a.id;
      if (!rewards_[k].is_finite()) {
        throw DataError("arc " + std::to_string(a.id) + " has non-finite reward");
      }
    }
  }

  const RobotSpec& spec() const { return spec_; }
  int node_count() const { return spec_.state_count(); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int id) const { return arcs_.at(static_cast<std::size_t>(id - 1)); }
  const RewardMatrix& rewards() const { return rewards_; }
  const RewardVector& reward(int arc_id) const {
    return rewards_.at(static_cast<std::size_t>(arc_id - 1));
  }

  // Id of the arc from -> to, if the graph has one (enabled or not).
  std::optional<int> arc_id(NodeId from, NodeId to) const {
    if (from.index < 1 || from.index > node_count() || to.index < 1 ||
        to.index > node_count()) {
      return std::nullopt;
    }
    const int id = arc_lookup_[lookup_index(from, to)];
    if (id == 0) return std::nullopt;
    return id;
  }

  bool node_enabled(NodeId node) const {
    return node.index >= 1 && node.index <= node_count() &&
           node_enabled_[static_cast<std::size_t>(node.index - 1)];
  }
  bool arc_enabled(int arc_id) const {
    return arc_id >= 1 && arc_id <= arc_count() &&
           arc_enabled_[static_cast<std::size_t>(arc_id - 1)];
  }

  std::vector<NodeId> enabled_nodes() const {
    std::vector<NodeId> out;
    for (int i = 1; i <= node_count(); ++i) {
      if (node_enabled(NodeId{i})) out.push_back(NodeId{i});
    }
    return out;
  }
  std::vector<int> enabled_arcs() const {
    std::vector<int> out;
    for (const Arc& a : arcs_) {
      if (arc_enabled(a.id)) out.push_back(a.id);
    }
    return out;
  }

  // Copy with the given nodes (and every incident arc) and arcs disabled.
  TransitionGraph without(const std::vector<NodeId>& nodes,
                          const std::vector<int>& arc_ids) const {
    TransitionGraph g = *this;
    for (NodeId node : nodes) {
      if (node.index >= 1 && node.index <= node_count()) {
        g.node_enabled_[static_cast<std::size_t>(node.index - 1)] = false;
      }
    }
    for (int id : arc_ids) {
      if (id >= 1 && id <= arc_count()) {
        g.arc_enabled_[static_cast<std::size_t>(id - 1)] = false;
      }
    }
    for (const Arc& a : g.arcs_) {
      if (!g.node_enabled(a.from) || !g.node_enabled(a.to)) {
        g.arc_enabled_[static_cast<std::size_t>(a.id - 1)] = false;
      }
    }
    return g;
  }

  bool operator==(const TransitionGraph& o) const {
    return spec_ == o.spec_ && rewards_ == o.rewards_ &&
           node_enabled_ == o.node_enabled_ && arc_enabled_ == o.arc_enabled_ &&
           arc_lookup_ == o.arc_lookup_;
  }

 private:
  std::size_t lookup_index(NodeId from, NodeId to) const {
    return static_cast<std::size_t>(from.index - 1) *
               static_cast<std::size_t>(node_count()) +
           static_cast<std::size_t>(to.index - 1);
  }

  RobotSpec spec_;
  std::vector<Arc> arcs_;
  RewardMatrix rewards_;
  std::vector<bool> node_enabled_;
  std::vector<bool> arc_enabled_;
  std::vector<int> arc_lookup_;
};

// Fully connected graph over every state of `spec`. Transitions missing from
// the table get a zero reward and are listed in one message in `warnings`.
inline TransitionGraph build_complete_graph(
    const RobotSpec& spec, const RewardTable& table,
    std::vector<std::string>* warnings = nullptr) {
  for (const auto& [key, reward] : table.entries) {
    try {
      validate_state(spec, key.first);
      validate_state(spec, key.second);
    } catch (const InvalidStateError& e) {
      throw InvalidTableError("reward table entry " + format_transition(key) +
                              " does not fit the robot spec: " + e.what());
    }
    if (key.first == key.second) {
      throw InvalidTableError("reward table has self-transition " +
                              format_transition(key));
    }
  }
  const int n = spec.state_count();
  std::vector<Arc> arcs;
  RewardMatrix rewards;
  arcs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1));
  std::string defaulted;
  int defaulted_count = 0;
  for (int u = 1; u <= n; ++u) {
    const State from = decode_node(spec, NodeId{u});
    for (int v = 1; v <= n; ++v) {
      if (u == v) continue;
      const State to = decode_node(spec, NodeId{v});
      arcs.push_back({static_cast<int>(arcs.size()) + 1, NodeId{u}, NodeId{v}});
      if (const RewardVector* r = table.find(from, to)) {
        rewards.push_back(*r);
      } else {
        rewards.push_back({});
        if (defaulted_count++ > 0) defaulted += ", ";
        defaulted += format_state(from) + "->" + format_state(to);
      }
    }
  }
  if (defaulted_count > 0 && warnings != nullptr) {
    warnings->push_back(std::to_string(defaulted_count) +
                        " transition(s) missing from the reward table, "
                        "using zero reward: " + defaulted);
  }
  return TransitionGraph(spec, std::move(arcs), std::move(rewards));
}

// Disables arcs whose reward is below `threshold` in every component.
inline TransitionGraph prune_arcs(const TransitionGraph& graph,
                                  const RewardVector& threshold) {
  if (!(threshold.dx >= 0 && threshold.dy >= 0 && threshold.dtheta >= 0)) {
    throw DataError("prune threshold components must be >= 0");
  }
  std::vector<int> pruned;
  for (const Arc& a : graph.arcs()) {
    const RewardVector& r = graph.reward(a.id);
    if (std::abs(r.dx) < threshold.dx && std::abs(r.dy) < threshold.dy &&
        std::abs(r.dtheta) < threshold.dtheta) {
      pruned.push_back(a.id);
    }
  }
  return graph.without({}, pruned);
}

// Fault isolation: subsystem `subsystem` (1-based) is stuck at `stuck_value`,
// so every state with a different behavior there becomes unreachable.
inline TransitionGraph disable_subsystem(const TransitionGraph& graph,
                                         int subsystem, int stuck_value) {
  const RobotSpec& spec = graph.spec();
  if (subsystem < 1 || subsystem > spec.subsystem_count()) {
    throw DataError("subsystem " + std::to_string(subsystem) +
                    " outside 1.." + std::to_string(spec.subsystem_count()));
  }
  if (stuck_value < 0 || stuck_value >= spec.behavior_count(subsystem - 1)) {
    throw DataError("stuck value " + std::to_string(stuck_value) +
                    " outside the behaviors of subsystem " +
                    std::to_string(subsystem));
  }
  std::vector<NodeId> isolated;
  for (int i = 1; i <= graph.node_count(); ++i) {
    const State s = decode_node(spec, NodeId{i});
    if (s.behaviors[static_cast<std::size_t>(subsystem - 1)] != stuck_value) {
      isolated.push_back(NodeId{i});
    }
  }
  return graph.without(isolated, {});
}

inline void write_dot(std::ostream& out, const TransitionGraph& graph) {
  const RobotSpec& spec = graph.spec();
  out << "digraph transition_graph {\n";
  out << "  node [shape=circle];\n";
  for (int i = 1; i <= graph.node_count(); ++i) {
    const std::string label = format_node(spec, NodeId{i});
    out << "  \"" << label << "\" [label=\"" << label << "\\nN" << i << "\"";
    if (!graph.node_enabled(NodeId{i})) {
      out << ", style=dashed, color=gray, fontcolor=gray";
    }
    out << "];\n";
  }
  for (const Arc& a : graph.arcs()) {
    if (!graph.arc_enabled(a.id)) continue;
    out << "  \"" << format_node(spec, a.from) << "\" -> \""
        << format_node(spec, a.to) << "\" [label=\""
        << format_reward(graph.reward(a.id)) << "\"];\n";
  }
  out << "}\n";
}

inline nlohmann::json to_json(const TransitionGraph& graph) {
  const RobotSpec& spec = graph.spec();
  nlohmann::json arcs = nlohmann::json::array();
  for (const Arc& a : graph.arcs()) {
    const RewardVector& r = graph.reward(a.id);
    arcs.push_back({{"id", a.id},
                    {"from", format_node(spec, a.from)},
                    {"to", format_node(spec, a.to)},
                    {"reward", {r.dx, r.dy, r.dtheta}},
                    {"enabled", graph.arc_enabled(a.id)}});
  }
  nlohmann::json disabled = nlohmann::json::array();
  for (int i = 1; i <= graph.node_count(); ++i) {
    if (!graph.node_enabled(NodeId{i})) {
      disabled.push_back(format_node(spec, NodeId{i}));
    }
  }
  return {{"robot", to_json(spec)}, {"arcs", arcs}, {"disabled_nodes", disabled}};
}

inline TransitionGraph graph_from_json(const nlohmann::json& j) {
  try {
    const RobotSpec spec = robot_spec_from_json(j.at("robot"));
    std::vector<Arc> arcs;
    RewardMatrix rewards;
    std::vector<int> disabled_arcs;
    for (const auto& a : j.at("arcs")) {
      const int id = a.at("id").get<int>();
      const NodeId from = parse_node(spec, a.at("from").get<std::string>());
      const NodeId to = parse_node(spec, a.at("to").get<std::string>());
      const auto& r = a.at("reward");
      if (!r.is_array() || r.size() != 3) {
        throw ParseError("arc " + std::to_string(id) + ": reward must be [dx, dy, dtheta]");
      }
      arcs.push_back({id, from, to});
      rewards.push_back({r[0].get<double>(), r[1].get<double>(), r[2].get<double>()});
      if (!a.value("enabled", true)) disabled_arcs.push_back(id);
    }
    std::vector<NodeId> disabled_nodes;
    if (j.contains("disabled_nodes")) {
      for (const auto& s : j.at("disabled_nodes")) {
        disabled_nodes.push_back(parse_node(spec, s.get<std::string>()));
      }
    }
    return TransitionGraph(spec, std::move(arcs), std::move(rewards))
        .without(disabled_nodes, disabled_arcs);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("graph file: ") + e.what());
  }
}

inline TransitionGraph load_graph(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("graph file: ") + e.what());
  }
  return graph_from_json(j);
}

}  // namespace softgait

#endif  // SOFTGAIT_TRANSITION_GRAPH_HPP_

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

#ifndef SOFTGAIT_CYCLE_BASIS_HPP_
#define SOFTGAIT_CYCLE_BASIS_HPP_

// Simple cycles of a transition graph and their rewards.
//
// Every closed gait is a nonnegative integer combination of simple cycles, so
// the full list of simple cycles (with each cycle's summed arc reward) is the
// column set of the gait optimization. Enumeration uses Johnson's circuit
// algorithm, run per start vertex on the strongly connected component of
// that vertex within the subgraph of vertices >= start; each cycle is thus
// found once, already rotated to start at its smallest node.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "softgait/errors.hpp"
#include "softgait/reward.hpp"
#include "softgait/transition_graph.hpp"

namespace softgait {

struct SimpleCycle {
  // Starts at the smallest node; the closing arc back to nodes.front() is
  // implicit.
  std::vector<NodeId> nodes;
  // Arc ids in traversal order; these are the positions of the ones in the
  // cycle's incidence vector.
  std::vector<int> arc_ids;

  int length() const { return static_cast<int>(arc_ids.size()); }

  bool contains(NodeId node) const {
    return std::find(nodes.begin(), nodes.end(), node) != nodes.end();
  }

  // Dense 0/1 incidence vector over arcs 1..arc_count (index k-1 is arc k).
  std::vector<int> incidence(int arc_count) const {
    std::vector<int> c(static_cast<std::size_t>(arc_count), 0);
    for (int id : arc_ids) c[static_cast<std::size_t>(id - 1)] = 1;
    return c;
  }

  friend bool operator==(const SimpleCycle&, const SimpleCycle&) = default;
};

struct CycleBasis {
  std::vector<SimpleCycle> cycles;
  // Column i is the reward of cycles[i].
  RewardMatrix cycle_rewards;
  int arc_count = 0;

  std::size_t size() const { return cycles.size(); }
  bool empty() const { return cycles.empty(); }
};

inline constexpr std::size_t kDefaultCycleCap = 1'000'000;

// Matrix-vector product of the 3xP reward matrix with an arc count vector.
inline RewardVector cycle_reward(const RewardMatrix& rewards,
                                 std::span<const int> incidence) {
  if (rewards.size() != incidence.size()) {
    throw DimensionMismatchError(
        "reward matrix has " + std::to_string(rewards.size()) +
        " columns, incidence vector has " + std::to_string(incidence.size()) +
        " entries");
  }
  RewardVector sum;
  for (std::size_t k = 0; k < rewards.size(); ++k) {
    if (incidence[k] != 0) sum += static_cast<double>(incidence[k]) * rewards[k];
  }
  return sum;
}

// Validates `nodes` as a simple cycle over enabled arcs of `graph` and
// returns the cycle rotated to start at its smallest node.
inline SimpleCycle make_cycle(const std::vector<NodeId>& nodes,
                              const TransitionGraph& graph) {
  if (nodes.size() < 2) {
    throw InvalidCycleError("a simple cycle needs at least two nodes");
  }
  std::vector<bool> seen(static_cast<std::size_t>(graph.node_count() + 1), false);
  for (NodeId v : nodes) {
    if (v.index < 1 || v.index > graph.node_count()) {
      throw InvalidCycleError("node N" + std::to_string(v.index) +
                              " is not in the graph");
    }
    if (seen[static_cast<std::size_t>(v.index)]) {
      throw InvalidCycleError("node N" + std::to_string(v.index) +
                              " repeats within the cycle");
    }
    seen[static_cast<std::size_t>(v.index)] = true;
  }
  const auto min_it = std::min_element(nodes.begin(), nodes.end());
  SimpleCycle cycle;
  cycle.nodes.assign(min_it, nodes.end());
  cycle.nodes.insert(cycle.nodes.end(), nodes.begin(), min_it);
  for (std::size_t i = 0; i < cycle.nodes.size(); ++i) {
    const NodeId from = cycle.nodes[i];
    const NodeId to = cycle.nodes[(i + 1) % cycle.nodes.size()];
    const auto id = graph.arc_id(from, to);
    if (!id || !graph.arc_enabled(*id)) {
      throw InvalidCycleError("no enabled arc N" + std::to_string(from.index) +
                              "->N" + std::to_string(to.index));
    }
    cycle.arc_ids.push_back(*id);
  }
  return cycle;
}

inline std::vector<int> cycle_incidence(const std::vector<NodeId>& nodes,
                                        const TransitionGraph& graph) {
  return make_cycle(nodes, graph).incidence(graph.arc_count());
}

namespace detail {

// Tarjan SCC over vertices >= `first` (1-based, inclusive); returns the
// component id per vertex, -1 for vertices below `first`.
inline std::vector<int> strong_components(
    const std::vector<std::vector<int>>& adj, int first) {
  const int n = static_cast<int>(adj.size()) - 1;
  std::vector<int> comp(adj.size(), -1);
  std::vector<int> index(adj.size(), -1);
  std::vector<int> low(adj.size(), 0);
  std::vector<bool> on_stack(adj.size(), false);
  std::vector<int> stack;
  struct Frame {
    int v;
    std::size_t next;
  };
  std::vector<Frame> call;
  int counter = 0;
  int comp_count = 0;
  for (int root = first; root <= n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      Frame& f = call.back();
      const auto v = static_cast<std::size_t>(f.v);
      if (f.next == 0 && index[v] == -1) {
        index[v] = low[v] = counter++;
        stack.push_back(f.v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (f.next < adj[v].size()) {
        const int w = adj[v][f.next++];
        if (w < first) continue;
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] == -1) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[wi]) low[v] = std::min(low[v], index[wi]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          comp[static_cast<std::size_t>(w)] = comp_count;
          if (w == f.v) break;
        }
        ++comp_count;
      }
      const int done = f.v;
      call.pop_back();
      if (!call.empty()) {
        const auto parent = static_cast<std::size_t>(call.back().v);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(done)]);
      }
    }
  }
  return comp;
}

}  // namespace detail

// All simple cycles over enabled nodes and arcs, sorted by length and then
// by node sequence. Throws ResourceLimitError once more than `cap` cycles
// have been found.
inline CycleBasis enumerate_simple_cycles(const TransitionGraph& graph,
                                          std::size_t cap = kDefaultCycleCap) {
  const int n = graph.node_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n + 1));
  for (const Arc& a : graph.arcs()) {
    if (graph.arc_enabled(a.id)) {
      adj[static_cast<std::size_t>(a.from.index)].push_back(a.to.index);
    }
  }
  for (auto& out : adj) std::sort(out.begin(), out.end());

  std::vector<std::vector<int>> found;
  std::vector<bool> blocked(static_cast<std::size_t>(n + 1), false);
  std::vector<std::vector<int>> blocked_by(static_cast<std::size_t>(n + 1));
  std::vector<int> path;

  auto unblock = [&](int u) {
    std::vector<int> work{u};
    while (!work.empty()) {
      const int x = work.back();
      work.pop_back();
      const auto xi = static_cast<std::size_t>(x);
      if (!blocked[xi]) continue;
      blocked[xi] = false;
      for (int w : blocked_by[xi]) work.push_back(w);
      blocked_by[xi].clear();
    }
  };

  struct Frame {
    int v;
    std::size_t next;
    bool closed;  // some cycle through s was found below this vertex
  };

  for (int s = 1; s <= n; ++s) {
    const std::vector<int> comp = detail::strong_components(adj, s);
    const int scc = comp[static_cast<std::size_t>(s)];
    auto in_scc = [&](int w) {
      return w >= s && comp[static_cast<std::size_t>(w)] == scc;
    };
    for (int v = s; v <= n; ++v) {
      if (in_scc(v)) {
        blocked[static_cast<std::size_t>(v)] = false;
        blocked_by[static_cast<std::size_t>(v)].clear();
      }
    }
    std::vector<Frame> call{{s, 0, false}};
    path.assign(1, s);
    blocked[static_cast<std::size_t>(s)] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& out = adj[static_cast<std::size_t>(f.v)];
      bool descended = false;
      while (f.next < out.size()) {
        const int w = out[f.next++];
        if (!in_scc(w)) continue;
        if (w == s) {
          found.push_back(path);
          if (found.size() > cap) {
            throw ResourceLimitError(
                "simple cycle count exceeds the cap of " + std::to_string(cap) +
                    " (stopped after " + std::to_string(found.size()) + ")",
                found.size());
          }
          f.closed = true;
        } else if (!blocked[static_cast<std::size_t>(w)]) {
          call.push_back({w, 0, false});
          path.push_back(w);
          blocked[static_cast<std::size_t>(w)] = true;
          descended = true;
          break;
        }
      }
      if (descended) continue;
      // All successors of f.v explored.
      const int v = f.v;
      const bool closed = f.closed;
      if (closed) {
        unblock(v);
      } else {
        for (int w : out) {
          if (!in_scc(w)) continue;
          auto& list = blocked_by[static_cast<std::size_t>(w)];
          if (std::find(list.begin(), list.end(), v) == list.end()) {
            list.push_back(v);
          }
        }
      }
      call.pop_back();
      path.pop_back();
      if (!call.empty() && closed) call.back().closed = true;
    }
  }

  std::sort(found.begin(), found.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });

  CycleBasis basis;
  basis.arc_count = graph.arc_count();
  basis.cycles.reserve(found.size());
  basis.cycle_rewards.reserve(found.size());
  for (const auto& seq : found) {
    SimpleCycle c;
    for (int v : seq) c.nodes.push_back(NodeId{v});
    for (std::size_t i = 0; i < seq.size(); ++i) {
      c.arc_ids.push_back(
          *graph.arc_id(NodeId{seq[i]}, NodeId{seq[(i + 1) % seq.size()]}));
    }
    basis.cycle_rewards.push_back(
        cycle_reward(graph.rewards(), c.incidence(graph.arc_count())));
    basis.cycles.push_back(std::move(c));
  }
  return basis;
}

inline std::string format_cycle(const RobotSpec& spec, const SimpleCycle& c) {
  std::string out;
  for (NodeId v : c.nodes) {
    out += format_node(spec, v);
    out += " \xE2\x86\x92 ";  // U+2192 RIGHTWARDS ARROW
  }
  out += format_node(spec, c.nodes.front());
  return out;
}

// [{"index": 1, "nodes": ["000", "001"], "length": 2, "reward": [...]}, ...]
inline nlohmann::json to_json(const CycleBasis& basis, const RobotSpec& spec) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const SimpleCycle& c = basis.cycles[i];
    nlohmann::json nodes = nlohmann::json::array();
    for (NodeId v : c.nodes) nodes.push_back(format_node(spec, v));
    const RewardVector& r = basis.cycle_rewards[i];
    out.push_back({{"index", i + 1},
                   {"nodes", nodes},
                   {"length", c.length()},
                   {"reward", {r.dx, r.dy, r.dtheta}}});
  }
  return out;
}

}  // namespace softgait

#endif  // SOFTGAIT_CYCLE_BASIS_HPP_

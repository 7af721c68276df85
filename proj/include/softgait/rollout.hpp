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

#ifndef SOFTGAIT_ROLLOUT_HPP_
#define SOFTGAIT_ROLLOUT_HPP_

// Executable state sequences for circulations, and the planar poses they
// produce.

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "softgait/cycle_basis.hpp"
#include "softgait/detail/text.hpp"
#include "softgait/errors.hpp"
#include "softgait/gait_planner.hpp"
#include "softgait/transition_graph.hpp"

namespace softgait {

// Position in length units, heading in degrees.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  friend bool operator==(const Pose&, const Pose&) = default;
};

// Maps an angle in degrees to (-180, 180].
inline double normalize_degrees(double deg) {
  double t = std::fmod(deg, 360.0);
  if (t <= -180.0) t += 360.0;
  if (t > 180.0) t -= 360.0;
  return t;
}

struct Walk {
  std::vector<NodeId> nodes;
  // arc_ids[i] joins nodes[i] -> nodes[i + 1].
  std::vector<int> arc_ids;
};

inline Walk make_walk(const std::vector<NodeId>& nodes, const TransitionGraph& graph) {
  if (nodes.empty()) throw DataError("a walk needs at least one node");
  Walk w;
  w.nodes = nodes;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto id = graph.arc_id(nodes[i], nodes[i + 1]);
    if (!id || !graph.arc_enabled(*id)) {
      throw DataError("no enabled arc " + format_node(graph.spec(), nodes[i]) + "->" +
                      format_node(graph.spec(), nodes[i + 1]));
    }
    w.arc_ids.push_back(*id);
  }
  return w;
}

// Orders the arcs of a circulation into one closed walk from `start`
// (Hierholzer's algorithm). Cycles are consumed in basis order, so repeats
// of a single cycle come out as plain repetition.
inline Walk sequence_circulation(const Circulation& circulation,
                                 const CycleBasis& basis,
                                 const TransitionGraph& graph, NodeId start) {
  if (circulation.is_zero()) {
    throw DataError("cannot sequence the empty circulation");
  }
  const RobotSpec& spec = graph.spec();
  if (!graph.node_enabled(start)) {
    throw DataError("start state " +
                    (start.index >= 1 && start.index <= graph.node_count()
                         ? format_node(spec, start)
                         : "N" + std::to_string(start.index)) +
                    " is not an enabled node");
  }
  const auto counts = arc_counts(circulation, basis);
  const auto n = static_cast<std::size_t>(graph.node_count());
  std::vector<std::deque<int>> out(n + 1);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (int rep = 0; rep < circulation.coefficients[i]; ++rep) {
      for (int id : basis.cycles[i].arc_ids) {
        if (!graph.arc_enabled(id)) {
          throw NotExecutableError("cycle " + std::to_string(i + 1) +
                                   " uses a disabled arc");
        }
        out[static_cast<std::size_t>(graph.arc(id).from.index)].push_back(id);
      }
    }
  }

  // Components of the selected arcs (union-find over nodes).
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      auto& p = parent[static_cast<std::size_t>(v)];
      p = parent[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  };
  std::vector<bool> used(n + 1, false);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const Arc& a = graph.arcs()[k];
    used[static_cast<std::size_t>(a.from.index)] = true;
    used[static_cast<std::size_t>(a.to.index)] = true;
    parent[static_cast<std::size_t>(find(a.from.index))] = find(a.to.index);
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> group_of(n + 1, -1);
  for (int v = 1; v <= static_cast<int>(n); ++v) {
    if (!used[static_cast<std::size_t>(v)]) continue;
    int& g = group_of[static_cast<std::size_t>(find(v))];
    if (g < 0) {
      g = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(g)].push_back(v);
  }
  auto describe = [&]() {
    std::string s;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      s += g == 0 ? "{" : ", {";
      for (std::size_t i = 0; i < groups[g].size(); ++i) {
        if (i > 0) s += ", ";
        s += format_node(spec, NodeId{groups[g][i]});
      }
      s += "}";
    }
    return s;
  };
  if (groups.size() > 1) {
    throw NotExecutableError("circulation splits into disconnected cycle groups " +
                             describe());
  }
  if (!used[static_cast<std::size_t>(start.index)]) {
    throw NotExecutableError("start state " + format_node(spec, start) +
                             " is not on any selected cycle " + describe());
  }

  // Hierholzer: walk until stuck, then back out onto the circuit.
  std::vector<std::pair<int, int>> stack{{start.index, 0}};  // (node, arc in)
  std::vector<std::pair<int, int>> circuit;
  while (!stack.empty()) {
    const int v = stack.back().first;
    auto& q = out[static_cast<std::size_t>(v)];
    if (!q.empty()) {
      const int id = q.front();
      q.pop_front();
      stack.emplace_back(graph.arc(id).to.index, id);
    } else {
      circuit.push_back(stack.back());
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  Walk walk;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    walk.nodes.push_back(NodeId{circuit[i].first});
    if (i > 0) walk.arc_ids.push_back(circuit[i].second);
  }
  // Balanced and connected, so every arc is consumed.
  std::vector<int> walked(counts.size(), 0);
  for (int id : walk.arc_ids) ++walked[static_cast<std::size_t>(id - 1)];
  if (walked != counts || walk.nodes.back() != start) {
    throw NotExecutableError("circulation is not balanced at every node");
  }
  return walk;
}

// Small-angle model: plain sum of the traversed arc rewards. The heading is
// the raw sum, not normalized.
inline Pose integrate_linear(const Walk& walk, const RewardMatrix& rewards) {
  Pose p;
  for (int id : walk.arc_ids) {
    const RewardVector& r = rewards.at(static_cast<std::size_t>(id - 1));
    p.x += r.dx;
    p.y += r.dy;
    p.theta += r.dtheta;
  }
  return p;
}

struct Rollout {
  Pose final_pose;
  // Pose after each transition.
  std::vector<Pose> trace;
};

inline Rollout linear_rollout(const Walk& walk, const RewardMatrix& rewards,
                              const Pose& start = {}) {
  Rollout out;
  Pose p = start;
  for (int id : walk.arc_ids) {
    const RewardVector& r = rewards.at(static_cast<std::size_t>(id - 1));
    p.x += r.dx;
    p.y += r.dy;
    p.theta += r.dtheta;
    out.trace.push_back(p);
  }
  out.final_pose = p;
  return out;
}

// Full planar composition: each transition's (dx, dy) is expressed in the
// body frame at the heading before the transition, then the heading
// advances by dtheta. Headings in the result are normalized.
inline Rollout integrate_se2(const Walk& walk, const RewardMatrix& rewards,
                             const Pose& start = {}) {
  Rollout out;
  double x = start.x;
  double y = start.y;
  double heading = start.theta;
  for (int id : walk.arc_ids) {
    const RewardVector& r = rewards.at(static_cast<std::size_t>(id - 1));
    const double rad = heading * std::numbers::pi / 180.0;
    const double c = std::cos(rad);
    const double s = std::sin(rad);
    x += r.dx * c - r.dy * s;
    y += r.dx * s + r.dy * c;
    heading += r.dtheta;
    out.trace.push_back({x, y, normalize_degrees(heading)});
  }
  out.final_pose = {x, y, normalize_degrees(heading)};
  return out;
}

// CSV "step,from,to,x,y,theta", one row per transition.
inline void write_trace_csv(std::ostream& out, const Walk& walk,
                            const Rollout& rollout, const RobotSpec& spec) {
  out << "step,from,to,x,y,theta\n";
  for (std::size_t i = 0; i < walk.arc_ids.size(); ++i) {
    const Pose& p = rollout.trace.at(i);
    out << (i + 1) << ',' << format_node(spec, walk.nodes[i]) << ','
        << format_node(spec, walk.nodes[i + 1]) << ',' << detail::format_double(p.x)
        << ',' << detail::format_double(p.y) << ',' << detail::format_double(p.theta)
        << '\n';
  }
}

inline std::string format_walk(const RobotSpec& spec, const Walk& walk) {
  std::string s;
  for (std::size_t i = 0; i < walk.nodes.size(); ++i) {
    if (i > 0) s += " \xE2\x86\x92 ";
    s += format_node(spec, walk.nodes[i]);
  }
  return s;
}

}  // namespace softgait

#endif  // SOFTGAIT_ROLLOUT_HPP_

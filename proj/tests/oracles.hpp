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

#ifndef SOFTGAIT_TESTS_ORACLES_HPP_
#define SOFTGAIT_TESTS_ORACLES_HPP_

// Independent reference computations used only by the tests. Nothing here
// calls the library code path it is used to check.

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "softgait.hpp"

#ifndef SOFTGAIT_DATA_DIR
#error "SOFTGAIT_DATA_DIR must point at the data/ directory"
#endif

namespace softgait::testing {

inline std::string data_path(const std::string& name) {
  return std::string(SOFTGAIT_DATA_DIR) + "/" + name;
}

inline RobotSpec three_limb() { return RobotSpec::uniform(3, 2); }

inline RewardTable tabletop_table() {
  std::ifstream in(data_path("tabletop_rewards.csv"));
  return load_reward_table(in, three_limb());
}

inline TransitionGraph tabletop_graph() {
  return build_complete_graph(three_limb(), tabletop_table());
}

// Number of simple cycles of the complete digraph on n nodes:
// sum_{k=2..n} C(n,k) (k-1)!.
inline std::int64_t complete_digraph_cycle_count(int n) {
  std::int64_t total = 0;
  for (int k = 2; k <= n; ++k) {
    std::int64_t binom = 1;
    for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
    std::int64_t fact = 1;
    for (int i = 2; i < k; ++i) fact *= i;
    total += binom * fact;
  }
  return total;
}

// Plain DFS enumeration: from every start s, extend paths through nodes
// greater than s and record each return to s. Cycles come out rotated to
// their minimum node, as sorted node lists.
inline std::set<std::vector<int>> brute_force_cycles(const TransitionGraph& g) {
  const int n = g.node_count();
  auto edge = [&](int u, int v) {
    const auto id = g.arc_id(NodeId{u}, NodeId{v});
    return id && g.arc_enabled(*id);
  };
  std::set<std::vector<int>> out;
  std::vector<int> path;
  std::vector<bool> on(static_cast<std::size_t>(n + 1), false);
  std::function<void(int, int)> dfs = [&](int s, int v) {
    for (int w = s; w <= n; ++w) {
      if (w == v || !edge(v, w)) continue;
      if (w == s) {
        if (path.size() >= 2) out.insert(path);
        continue;
      }
      if (on[static_cast<std::size_t>(w)]) continue;
      on[static_cast<std::size_t>(w)] = true;
      path.push_back(w);
      dfs(s, w);
      path.pop_back();
      on[static_cast<std::size_t>(w)] = false;
    }
  };
  for (int s = 1; s <= n; ++s) {
    path.assign(1, s);
    on.assign(static_cast<std::size_t>(n + 1), false);
    on[static_cast<std::size_t>(s)] = true;
    dfs(s, s);
  }
  return out;
}

// SE(2) composition with 3x3 homogeneous transforms: pose <- pose * T(step)
// where T(step) translates by (dx, dy) and then rotates by dtheta.
using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat3 transform(double x, double y, double theta_deg) {
  const double t = theta_deg * std::numbers::pi / 180.0;
  return {{{std::cos(t), -std::sin(t), x}, {std::sin(t), std::cos(t), y}, {0, 0, 1}}};
}

// Returns {x, y, heading in degrees (unnormalized)}.
inline std::array<double, 3> compose_se2(const std::vector<RewardVector>& steps) {
  Mat3 pose = transform(0, 0, 0);
  double heading = 0;
  for (const auto& s : steps) {
    pose = mat_mul(pose, transform(s.dx, s.dy, s.dtheta));
    heading += s.dtheta;
  }
  return {pose[0][2], pose[1][2], heading};
}

// Re-derives J(L), length and feasibility of a circulation from the raw
// reward matrix (arc-level), not from cached cycle rewards.
struct Recheck {
  RewardVector reward;
  int length = 0;
  double time = 0;
  bool feasible = false;
};

inline Recheck recheck(const GaitProblem& p, const CycleBasis& basis,
                       const RewardMatrix& rewards, const std::vector<int>& x) {
  Recheck r;
  std::vector<long long> arc_use(rewards.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (int id : basis.cycles[i].arc_ids) arc_use[static_cast<std::size_t>(id - 1)] += x[i];
  }
  for (std::size_t k = 0; k < rewards.size(); ++k) {
    if (arc_use[k] == 0) continue;
    r.reward.dx += static_cast<double>(arc_use[k]) * rewards[k].dx;
    r.reward.dy += static_cast<double>(arc_use[k]) * rewards[k].dy;
    r.reward.dtheta += static_cast<double>(arc_use[k]) * rewards[k].dtheta;
    r.length += static_cast<int>(arc_use[k]);
    if (p.time_budget) r.time += static_cast<double>(arc_use[k]) * p.time_budget->arc_durations[k];
  }
  r.feasible = r.length > 0 && r.length <= p.l_max;
  for (Axis a : kAllAxes) {
    if (a == p.objective) continue;
    const double v = r.reward[a];
    if (v < p.bound(a).lower - 1e-9 || v > p.bound(a).upper + 1e-9) r.feasible = false;
  }
  if (p.time_budget && r.time > p.time_budget->t_max + 1e-9) r.feasible = false;
  return r;
}

// Random complete graph on n binary-ish states with rewards on a quarter
// grid in [-4, 4].
inline TransitionGraph random_quarter_graph(int n, std::mt19937& rng) {
  const RobotSpec spec(std::vector<SubsystemSpec>{{"a", n}});
  std::uniform_int_distribution<int> q(-16, 16);
  RewardTable table;
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v) {
      if (u == v) continue;
      table.entries[{decode_node(spec, NodeId{u}), decode_node(spec, NodeId{v})}] = {
          q(rng) / 4.0, q(rng) / 4.0, q(rng) / 4.0};
    }
  }
  return build_complete_graph(spec, table);
}

// Exhaustive optimum straight from the arc-level rewards: the best objective
// value and every coefficient vector attaining it, in increasing
// lexicographic order. Rewards must lie on the problem's grid.
struct ExhaustiveResult {
  bool feasible = false;
  double value = 0;
  std::vector<std::vector<int>> argmax;
};

inline ExhaustiveResult exhaustive_optimum(const GaitProblem& p,
                                           const CycleBasis& basis,
                                           const RewardMatrix& rewards) {
  const double sign = p.sense == Sense::kMaximize ? 1.0 : -1.0;
  ExhaustiveResult res;
  std::vector<int> x(basis.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == basis.size()) {
      const Recheck r = recheck(p, basis, rewards, x);
      if (!r.feasible) return;
      const double v = sign * r.reward[p.objective];
      if (!res.feasible || v > res.value) {
        res.feasible = true;
        res.value = v;
        res.argmax.clear();
      }
      if (v == res.value) res.argmax.push_back(x);
      return;
    }
    const auto& c = basis.cycles[i];
    const bool usable = !p.home_node || c.contains(*p.home_node);
    const int room = usable ? (p.l_max - used) / c.length() : 0;
    for (int k = 0; k <= room; ++k) {
      x[i] = k;
      rec(i + 1, used + k * c.length());
    }
    x[i] = 0;
  };
  rec(0, 0);
  res.value *= sign;
  return res;
}

}  // namespace softgait::testing

#endif  // SOFTGAIT_TESTS_ORACLES_HPP_

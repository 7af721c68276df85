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

#ifndef SOFTGAIT_GAIT_PLANNER_HPP_
#define SOFTGAIT_GAIT_PLANNER_HPP_

// Optimal gaits as integer combinations of simple cycles.
//
// A gait (circulation) picks a nonnegative repeat count x_i for every cycle
// of a CycleBasis. The planner optimizes one reward axis of the summed
// reward J = sum_i x_i J_i while keeping the other two axes inside drift
// intervals and the total number of transitions within l_max (optionally
// also a total transition time within t_max).
//
// Rewards are rounded to multiples of 1/denominator and handled as scaled
// integers, so optimal values and ties are exact. The search is a
// depth-first branch and bound over multisets of columns:
//
//  * Phase 1 finds the optimal value. Columns are visited in decreasing
//    objective-per-transition order. A node is pruned when a Lagrangian
//    bound (drift constraints priced by fixed multipliers, chosen once at
//    the root, including the all-zero multiplier that gives the plain
//    density bound) or a drift reachability test proves no completion can
//    beat the incumbent.
//  * Phase 2 lists circulations attaining that value, in increasing
//    lexicographic order of the coefficient vector, using the same bounds
//    over the basis order.
//
// The empty circulation is not a gait. When no nonzero circulation satisfies
// the constraints the status is kInfeasible and the empty circulation is
// reported.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "softgait/cycle_basis.hpp"
#include "softgait/detail/text.hpp"
#include "softgait/errors.hpp"
#include "softgait/reward.hpp"
#include "softgait/transition_graph.hpp"

namespace softgait {

enum class Sense { kMaximize, kMinimize };

// Allowed range of a non-objective reward axis: [-eps_minus, eps_plus].
struct DriftBound {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  static DriftBound symmetric(double eps) { return {-eps, eps}; }
  bool contains(double v) const { return v >= lower && v <= upper; }
};

struct TimeBudget {
  // Seconds per transition, indexed like arcs (entry k-1 is arc k).
  std::vector<double> arc_durations;
  double t_max = 0.0;
};

struct GaitProblem {
  Axis objective = Axis::kX;
  Sense sense = Sense::kMaximize;
  // Indexed by Axis; the entry of the objective axis is ignored.
  std::array<DriftBound, 3> drift{};
  int l_max = 2;
  std::optional<TimeBudget> time_budget;
  // When set, only cycles through this node are used.
  std::optional<NodeId> home_node;
  // Rewards are rounded to multiples of 1/denominator.
  int denominator = 4;

  DriftBound& bound(Axis axis) { return drift[static_cast<std::size_t>(axis)]; }
  const DriftBound& bound(Axis axis) const {
    return drift[static_cast<std::size_t>(axis)];
  }
};

struct Circulation {
  std::vector<int> coefficients;

  bool is_zero() const {
    return std::all_of(coefficients.begin(), coefficients.end(),
                       [](int x) { return x == 0; });
  }
  friend bool operator==(const Circulation&, const Circulation&) = default;
};

enum class SolveStatus { kOptimal, kInfeasible, kResourceLimit };

inline std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kResourceLimit: return "resource-limit";
  }
  return "?";
}

struct GaitSolution {
  Circulation circulation;
  RewardVector reward;
  int length = 0;
  double time = 0.0;
  SolveStatus status = SolveStatus::kInfeasible;
  std::uint64_t nodes_explored = 0;
};

struct SolverOptions {
  std::uint64_t node_limit = 500'000'000;
  // Zero means no wall-clock limit.
  std::chrono::milliseconds time_limit{0};
};

inline void validate_problem(const GaitProblem& problem,
                             const CycleBasis& basis) {
  if (problem.l_max < 2) {
    throw DataError("l_max must be at least 2, got " +
                    std::to_string(problem.l_max));
  }
  if (problem.denominator < 1) {
    throw DataError("quantization denominator must be >= 1");
  }
  for (Axis a : kAllAxes) {
    if (a == problem.objective) continue;
    const DriftBound& b = problem.bound(a);
    if (std::isnan(b.lower) || std::isnan(b.upper) || !(b.lower <= 0.0) ||
        !(b.upper >= 0.0)) {
      throw DataError("drift bound for " + std::string(axis_name(a)) +
                      " must contain zero");
    }
  }
  if (problem.time_budget) {
    const auto& t = *problem.time_budget;
    if (static_cast<int>(t.arc_durations.size()) != basis.arc_count) {
      throw DimensionMismatchError(
          "arc duration vector has " + std::to_string(t.arc_durations.size()) +
          " entries for " + std::to_string(basis.arc_count) + " arcs");
    }
    for (double d : t.arc_durations) {
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw DataError("arc durations must be finite and >= 0");
      }
    }
    if (!std::isfinite(t.t_max)) throw DataError("t_max must be finite");
  }
  if (basis.cycle_rewards.size() != basis.cycles.size()) {
    throw DimensionMismatchError("cycle basis rewards do not match its cycles");
  }
}

// Sum of x_i c_i: how often each arc is traversed.
inline std::vector<int> arc_counts(const Circulation& circulation,
                                   const CycleBasis& basis) {
  if (circulation.coefficients.size() != basis.size()) {
    throw DimensionMismatchError("circulation has " +
                                 std::to_string(circulation.coefficients.size()) +
                                 " coefficients for " +
                                 std::to_string(basis.size()) + " cycles");
  }
  std::vector<int> counts(static_cast<std::size_t>(basis.arc_count), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int x = circulation.coefficients[i];
    if (x == 0) continue;
    for (int id : basis.cycles[i].arc_ids) {
      counts[static_cast<std::size_t>(id - 1)] += x;
    }
  }
  return counts;
}

// J(L) = sum_i x_i J_i.
inline RewardVector circulation_reward(const Circulation& circulation,
                                       const CycleBasis& basis) {
  RewardVector sum;
  for (std::size_t i = 0; i < circulation.coefficients.size(); ++i) {
    const int x = circulation.coefficients[i];
    if (x != 0) sum += static_cast<double>(x) * basis.cycle_rewards.at(i);
  }
  return sum;
}

inline int circulation_length(const Circulation& circulation,
                              const CycleBasis& basis) {
  int len = 0;
  for (std::size_t i = 0; i < circulation.coefficients.size(); ++i) {
    len += circulation.coefficients[i] * basis.cycles.at(i).length();
  }
  return len;
}

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack for comparisons of bounds computed in floating point against
// integer (scaled) objective values.
inline constexpr double kBoundSlack = 1e-6;

struct PlanColumn {
  int basis_index = 0;
  int length = 0;
  std::int64_t objective = 0;
  std::array<std::int64_t, 2> drift{};
  double time = 0.0;
};

struct Partial {
  std::int64_t objective = 0;
  std::array<std::int64_t, 2> drift{};
  int length = 0;
  double time = 0.0;

  Partial plus(const PlanColumn& c) const {
    Partial p = *this;
    p.objective += c.objective;
    p.drift[0] += c.drift[0];
    p.drift[1] += c.drift[1];
    p.length += c.length;
    p.time += c.time;
    return p;
  }
};

inline std::int64_t quantize(double v, int denominator) {
  return static_cast<std::int64_t>(std::llround(v * denominator));
}

// The problem in scaled integer form, restricted to usable columns.
struct ScaledProblem {
  std::vector<PlanColumn> columns;  // basis order
  std::array<Axis, 2> drift_axes{};
  std::array<double, 2> lower{};    // scaled, may be infinite
  std::array<double, 2> upper{};
  int l_max = 0;
  bool timed = false;
  double t_max = 0.0;
  std::size_t basis_size = 0;

  bool time_ok(double t) const { return !timed || t <= t_max + 1e-9; }

  bool feasible(const Partial& p) const {
    if (p.length == 0 || p.length > l_max || !time_ok(p.time)) return false;
    for (int k = 0; k < 2; ++k) {
      const double d = static_cast<double>(p.drift[static_cast<std::size_t>(k)]);
      if (d < lower[static_cast<std::size_t>(k)] ||
          d > upper[static_cast<std::size_t>(k)]) {
        return false;
      }
    }
    return true;
  }
};

inline ScaledProblem scale_problem(const GaitProblem& problem,
                                   const CycleBasis& basis) {
  ScaledProblem sp;
  sp.basis_size = basis.size();
  sp.l_max = problem.l_max;
  const int den = problem.denominator;
  int k = 0;
  for (Axis a : kAllAxes) {
    if (a == problem.objective) continue;
    const DriftBound& b = problem.bound(a);
    const auto ki = static_cast<std::size_t>(k);
    sp.drift_axes[ki] = a;
    sp.lower[ki] = std::isfinite(b.lower) ? std::ceil(b.lower * den - 1e-9) : -kInf;
    sp.upper[ki] = std::isfinite(b.upper) ? std::floor(b.upper * den + 1e-9) : kInf;
    ++k;
  }
  if (problem.time_budget) {
    sp.timed = true;
    sp.t_max = problem.time_budget->t_max;
  }
  const double sign = problem.sense == Sense::kMaximize ? 1.0 : -1.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const SimpleCycle& c = basis.cycles[i];
    if (problem.home_node && !c.contains(*problem.home_node)) continue;
    if (c.length() > problem.l_max) continue;
    PlanColumn col;
    col.basis_index = static_cast<int>(i);
    col.length = c.length();
    const RewardVector& r = basis.cycle_rewards[i];
    col.objective = quantize(sign * r[problem.objective], den);
    col.drift[0] = quantize(r[sp.drift_axes[0]], den);
    col.drift[1] = quantize(r[sp.drift_axes[1]], den);
    if (sp.timed) {
      for (int id : c.arc_ids) {
        col.time += problem.time_budget->arc_durations[static_cast<std::size_t>(id - 1)];
      }
      if (!sp.time_ok(col.time)) continue;
    }
    sp.columns.push_back(col);
  }
  return sp;
}

using Multiplier = std::array<double, 2>;

// Value of the Lagrangian relaxation at the root:
// l_max * max(0, max_j (obj_j - lambda.drift_j) / len_j) + sup of
// lambda.z over the drift box.
inline double lagrangian_value(const ScaledProblem& sp, const Multiplier& lambda) {
  double box = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    if (lambda[k] > 0) {
      if (!std::isfinite(sp.upper[k])) return kInf;
      box += lambda[k] * sp.upper[k];
    } else if (lambda[k] < 0) {
      if (!std::isfinite(sp.lower[k])) return kInf;
      box += lambda[k] * sp.lower[k];
    }
  }
  double best = 0.0;
  for (const PlanColumn& c : sp.columns) {
    const double reduced = static_cast<double>(c.objective) -
                           lambda[0] * static_cast<double>(c.drift[0]) -
                           lambda[1] * static_cast<double>(c.drift[1]);
    best = std::max(best, reduced / c.length);
  }
  return sp.l_max * best + box;
}

// Pattern search for a multiplier with a small relaxation value. Any
// multiplier yields a valid bound; this only tightens it.
inline Multiplier minimize_lagrangian(const ScaledProblem& sp,
                                      std::array<bool, 2> free_axes) {
  Multiplier lambda{0.0, 0.0};
  double value = lagrangian_value(sp, lambda);
  double step = 1.0;
  static constexpr std::array<std::array<double, 2>, 8> kDirections{{
      {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  for (int iter = 0; iter < 400 && step > 1e-5; ++iter) {
    bool improved = false;
    for (const auto& d : kDirections) {
      if ((d[0] != 0 && !free_axes[0]) || (d[1] != 0 && !free_axes[1])) continue;
      const Multiplier cand{lambda[0] + step * d[0], lambda[1] + step * d[1]};
      const double v = lagrangian_value(sp, cand);
      if (v < value - 1e-12) {
        lambda = cand;
        value = v;
        improved = true;
        break;
      }
    }
    step = improved ? std::min(step * 2.0, 1e6) : step / 2.0;
  }
  return lambda;
}

// Suffix statistics of a column ordering, used to bound every completion
// that only adds columns at positions >= p.
class BoundTable {
 public:
  BoundTable(const ScaledProblem& sp, std::vector<PlanColumn> order,
             std::vector<Multiplier> multipliers)
      : sp_(sp), order_(std::move(order)), multipliers_(std::move(multipliers)) {
    const std::size_t n = order_.size();
    reduced_max_.assign(multipliers_.size(), std::vector<double>(n + 1, -kInf));
    for (auto& v : drift_max_) v.assign(n + 1, -kInf);
    for (auto& v : drift_min_) v.assign(n + 1, kInf);
    min_length_.assign(n + 1, std::numeric_limits<int>::max());
    min_time_.assign(n + 1, kInf);
    for (std::size_t p = n; p-- > 0;) {
      const PlanColumn& c = order_[p];
      const double len = c.length;
      for (std::size_t m = 0; m < multipliers_.size(); ++m) {
        const Multiplier& l = multipliers_[m];
        const double reduced = (static_cast<double>(c.objective) -
                                l[0] * static_cast<double>(c.drift[0]) -
                                l[1] * static_cast<double>(c.drift[1])) / len;
        reduced_max_[m][p] = std::max(reduced_max_[m][p + 1], reduced);
      }
      for (std::size_t k = 0; k < 2; ++k) {
        const double dens = static_cast<double>(c.drift[k]) / len;
        drift_max_[k][p] = std::max(drift_max_[k][p + 1], dens);
        drift_min_[k][p] = std::min(drift_min_[k][p + 1], dens);
      }
      min_length_[p] = std::min(min_length_[p + 1], c.length);
      min_time_[p] = std::min(min_time_[p + 1], c.time);
    }
  }

  const std::vector<PlanColumn>& order() const { return order_; }

  // Upper bound on the objective of any feasible circulation that extends
  // `p` with columns at positions >= pos; -inf when none exists.
  double upper_bound(const Partial& partial, std::size_t pos) const {
    const int remaining = sp_.l_max - partial.length;
    if (remaining < 0 || !sp_.time_ok(partial.time)) return -kInf;
    const bool can_extend = pos < order_.size() &&
                            remaining >= min_length_[pos] &&
                            sp_.time_ok(partial.time + min_time_[pos]);
    if (!can_extend) {
      return sp_.feasible(partial) ? static_cast<double>(partial.objective) : -kInf;
    }
    const double r = remaining;
    std::array<double, 2> need_lo{};
    std::array<double, 2> need_hi{};
    for (std::size_t k = 0; k < 2; ++k) {
      const double d = static_cast<double>(partial.drift[k]);
      need_lo[k] = sp_.lower[k] - d;
      need_hi[k] = sp_.upper[k] - d;
      const double reach_hi = r * std::max(0.0, drift_max_[k][pos]);
      const double reach_lo = r * std::min(0.0, drift_min_[k][pos]);
      if (reach_hi < need_lo[k] - kBoundSlack ||
          reach_lo > need_hi[k] + kBoundSlack) {
        return -kInf;
      }
    }
    double best = kInf;
    for (std::size_t m = 0; m < multipliers_.size(); ++m) {
      const Multiplier& l = multipliers_[m];
      double value = static_cast<double>(partial.objective) +
                     r * std::max(0.0, reduced_max_[m][pos]);
      for (std::size_t k = 0; k < 2; ++k) {
        if (l[k] > 0) value += l[k] * need_hi[k];
        if (l[k] < 0) value += l[k] * need_lo[k];
      }
      best = std::min(best, value);
    }
    return best;
  }

 private:
  const ScaledProblem& sp_;
  std::vector<PlanColumn> order_;
  std::vector<Multiplier> multipliers_;
  std::vector<std::vector<double>> reduced_max_;
  std::array<std::vector<double>, 2> drift_max_;
  std::array<std::vector<double>, 2> drift_min_;
  std::vector<int> min_length_;
  std::vector<double> min_time_;
};

struct LimitExceeded {};

class GaitSearch {
 public:
  GaitSearch(const GaitProblem& problem, const CycleBasis& basis,
             const SolverOptions& options)
      : sp_(scale_problem(problem, basis)), options_(options),
        start_(std::chrono::steady_clock::now()) {
    prefilter();
    multipliers_.push_back({0.0, 0.0});
    const std::array<bool, 2> finite0{std::isfinite(sp_.lower[0]) || std::isfinite(sp_.upper[0]),
                                      false};
    const std::array<bool, 2> finite1{false,
                                      std::isfinite(sp_.lower[1]) || std::isfinite(sp_.upper[1])};
    for (const auto& axes : {finite0, finite1,
                             std::array<bool, 2>{finite0[0], finite1[1]}}) {
      if (!axes[0] && !axes[1]) continue;
      const Multiplier m = minimize_lagrangian(sp_, axes);
      if (m != Multiplier{0.0, 0.0} &&
          std::find(multipliers_.begin(), multipliers_.end(), m) == multipliers_.end()) {
        multipliers_.push_back(m);
      }
    }
  }

  const ScaledProblem& scaled() const { return sp_; }
  std::uint64_t nodes() const { return nodes_; }

  // Phase 1: best scaled objective, or nullopt when only the empty
  // circulation is feasible. `incumbent` receives the best circulation seen
  // (also when LimitExceeded escapes).
  std::optional<std::int64_t> optimal_value(std::vector<int>* incumbent) {
    std::vector<PlanColumn> order = undominated(sp_.columns);
    std::stable_sort(order.begin(), order.end(),
                     [](const PlanColumn& a, const PlanColumn& b) {
                       // a.obj / a.len > b.obj / b.len
                       return a.objective * b.length > b.objective * a.length;
                     });
    BoundTable table(sp_, std::move(order), multipliers_);
    incumbent_ = incumbent;
    counts_.assign(sp_.basis_size, 0);
    best_.reset();
    optimize(table, 0, Partial{});
    return best_;
  }

  // Phase 2: circulations reaching `value`, lexicographically increasing.
  std::vector<std::vector<int>> optima(std::int64_t value, std::size_t max_count) {
    BoundTable table(sp_, sp_.columns, multipliers_);
    counts_.assign(sp_.basis_size, 0);
    found_.clear();
    if (max_count > 0) enumerate(table, 0, Partial{}, value, max_count);
    return found_;
  }

 private:
  // Drops columns that cannot appear in any feasible circulation because
  // their drift cannot be compensated within the remaining length.
  void prefilter() {
    std::array<double, 2> max_dens{0.0, 0.0};
    std::array<double, 2> min_dens{0.0, 0.0};
    for (const PlanColumn& c : sp_.columns) {
      for (std::size_t k = 0; k < 2; ++k) {
        const double d = static_cast<double>(c.drift[k]) / c.length;
        max_dens[k] = std::max(max_dens[k], d);
        min_dens[k] = std::min(min_dens[k], d);
      }
    }
    std::vector<PlanColumn> kept;
    for (const PlanColumn& c : sp_.columns) {
      const double r = sp_.l_max - c.length;
      bool ok = true;
      for (std::size_t k = 0; k < 2; ++k) {
        const double d = static_cast<double>(c.drift[k]);
        if (d + r * max_dens[k] < sp_.lower[k] - kBoundSlack ||
            d + r * min_dens[k] > sp_.upper[k] + kBoundSlack) {
          ok = false;
        }
      }
      if (ok) kept.push_back(c);
    }
    sp_.columns = std::move(kept);
  }

  // Column b is dominated by a when both have the same drift and time and a
  // is no longer but at least as rewarding: swapping b for a in any
  // feasible circulation keeps it feasible and no worse. Only the optimal
  // value is needed in phase 1, so dominated columns are dropped there.
  static std::vector<PlanColumn> undominated(std::vector<PlanColumn> cols) {
    std::stable_sort(cols.begin(), cols.end(),
                     [](const PlanColumn& a, const PlanColumn& b) {
                       if (a.drift != b.drift) return a.drift < b.drift;
                       if (a.time != b.time) return a.time < b.time;
                       if (a.length != b.length) return a.length < b.length;
                       return a.objective > b.objective;
                     });
    std::vector<PlanColumn> kept;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const bool same_group = !kept.empty() && kept.back().drift == cols[i].drift &&
                              kept.back().time == cols[i].time;
      if (!same_group) {
        kept.push_back(cols[i]);
        continue;
      }
      // Within a group lengths are nondecreasing, so the last kept column
      // has the best objective among all shorter-or-equal ones.
      if (cols[i].objective > kept.back().objective) kept.push_back(cols[i]);
    }
    std::sort(kept.begin(), kept.end(), [](const PlanColumn& a, const PlanColumn& b) {
      return a.basis_index < b.basis_index;
    });
    return kept;
  }

  void tick() {
    ++nodes_;
    if (nodes_ > options_.node_limit) throw LimitExceeded{};
    if (options_.time_limit.count() > 0 && (nodes_ & 0xFFF) == 0 &&
        std::chrono::steady_clock::now() - start_ > options_.time_limit) {
      throw LimitExceeded{};
    }
  }

  void optimize(const BoundTable& table, std::size_t from, const Partial& partial) {
    tick();
    const auto& order = table.order();
    const int remaining = sp_.l_max - partial.length;
    for (std::size_t p = from; p < order.size(); ++p) {
      const PlanColumn& c = order[p];
      if (best_) {
        // Density order: no column at or after p can do better than this.
        const double dens = static_cast<double>(c.objective) / c.length;
        if (static_cast<double>(partial.objective) + remaining * std::max(0.0, dens) <
            static_cast<double>(*best_ + 1) - kBoundSlack) {
          break;
        }
      }
      if (c.length > remaining) continue;
      const Partial next = partial.plus(c);
      if (!sp_.time_ok(next.time)) continue;
      const double target = best_ ? static_cast<double>(*best_ + 1) : -kInf;
      if (table.upper_bound(next, p) < target - kBoundSlack) continue;
      const auto slot = static_cast<std::size_t>(c.basis_index);
      ++counts_[slot];
      if (sp_.feasible(next) && (!best_ || next.objective > *best_)) {
        best_ = next.objective;
        if (incumbent_ != nullptr) *incumbent_ = counts_;
      }
      optimize(table, p, next);
      --counts_[slot];
    }
  }

  // Returns false once max_count circulations were collected.
  bool enumerate(const BoundTable& table, std::size_t from, const Partial& partial,
                 std::int64_t value, std::size_t max_count) {
    tick();
    const auto& order = table.order();
    const double target = static_cast<double>(value) - kBoundSlack;
    for (std::size_t p = order.size(); p-- > from;) {
      const PlanColumn& c = order[p];
      const auto slot = static_cast<std::size_t>(c.basis_index);
      Partial next = partial;
      bool keep_going = true;
      while (true) {
        next = next.plus(c);
        if (next.length > sp_.l_max || !sp_.time_ok(next.time)) break;
        if (table.upper_bound(next, p) < target) break;
        ++counts_[slot];
        if (sp_.feasible(next) && next.objective == value) {
          found_.push_back(counts_);
          if (found_.size() >= max_count) keep_going = false;
        }
        if (keep_going && table.upper_bound(next, p + 1) >= target) {
          keep_going = enumerate(table, p + 1, next, value, max_count);
        }
        if (!keep_going) break;
      }
      counts_[slot] = 0;
      if (!keep_going) return false;
    }
    return true;
  }

  ScaledProblem sp_;
  SolverOptions options_;
  std::chrono::steady_clock::time_point start_;
  std::vector<Multiplier> multipliers_;
  std::uint64_t nodes_ = 0;
  std::vector<int> counts_;
  std::optional<std::int64_t> best_;
  std::vector<int>* incumbent_ = nullptr;
  std::vector<std::vector<int>> found_;
};

inline GaitSolution make_solution(std::vector<int> coefficients,
                                  const GaitProblem& problem,
                                  const CycleBasis& basis, SolveStatus status,
                                  std::uint64_t nodes) {
  GaitSolution s;
  s.circulation.coefficients = std::move(coefficients);
  s.circulation.coefficients.resize(basis.size(), 0);
  s.reward = circulation_reward(s.circulation, basis);
  s.length = circulation_length(s.circulation, basis);
  if (problem.time_budget) {
    const auto counts = arc_counts(s.circulation, basis);
    for (std::size_t k = 0; k < counts.size(); ++k) {
      s.time += counts[k] * problem.time_budget->arc_durations[k];
    }
  }
  s.status = status;
  s.nodes_explored = nodes;
  return s;
}

}  // namespace detail

// Up to `max_count` circulations attaining the optimal objective, in
// increasing lexicographic order of their coefficient vectors. Empty when
// no nonzero circulation is feasible. If a search limit is hit, a single
// solution with status kResourceLimit holds the best circulation found so
// far (possibly the empty one).
inline std::vector<GaitSolution> enumerate_optimal_gaits(
    const GaitProblem& problem, const CycleBasis& basis, std::size_t max_count,
    const SolverOptions& options = {}) {
  validate_problem(problem, basis);
  detail::GaitSearch search(problem, basis, options);
  std::vector<int> incumbent;
  std::optional<std::int64_t> value;
  try {
    value = search.optimal_value(&incumbent);
  } catch (const detail::LimitExceeded&) {
    // Best circulation so far; the empty one if nothing feasible was seen.
    return {detail::make_solution(incumbent, problem, basis,
                                  SolveStatus::kResourceLimit, search.nodes())};
  }
  if (!value) return {};
  std::vector<std::vector<int>> optima;
  try {
    optima = search.optima(*value, max_count);
  } catch (const detail::LimitExceeded&) {
    return {detail::make_solution(incumbent, problem, basis,
                                  SolveStatus::kResourceLimit, search.nodes())};
  }
  std::vector<GaitSolution> out;
  for (auto& x : optima) {
    out.push_back(detail::make_solution(std::move(x), problem, basis,
                                        SolveStatus::kOptimal, search.nodes()));
  }
  return out;
}

// The optimal gait; ties go to the lexicographically smallest coefficient
// vector.
inline GaitSolution solve_gait(const GaitProblem& problem, const CycleBasis& basis,
                               const SolverOptions& options = {}) {
  if (basis.empty()) throw DataError("cycle basis is empty");
  auto solutions = enumerate_optimal_gaits(problem, basis, 1, options);
  if (solutions.empty()) {
    return detail::make_solution({}, problem, basis, SolveStatus::kInfeasible, 0);
  }
  return std::move(solutions.front());
}

// Exhaustive reference solver over every coefficient vector with
// sum x_i len_i <= l_max. Same contract as solve_gait; only for small
// instances.
inline GaitSolution brute_force_gait(const GaitProblem& problem,
                                     const CycleBasis& basis) {
  validate_problem(problem, basis);
  if (basis.size() > 64 || problem.l_max > 12) {
    throw ResourceLimitError("brute force is limited to 64 cycles and l_max <= 12",
                             0);
  }
  const int den = problem.denominator;
  const double sign = problem.sense == Sense::kMaximize ? 1.0 : -1.0;
  std::vector<Axis> others;
  for (Axis a : kAllAxes) {
    if (a != problem.objective) others.push_back(a);
  }
  struct Column {
    bool usable;
    int length;
    std::int64_t objective;
    std::int64_t drift_a;
    std::int64_t drift_b;
    double time;
  };
  std::vector<Column> cols;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const SimpleCycle& c = basis.cycles[i];
    const RewardVector& r = basis.cycle_rewards[i];
    Column col{!problem.home_node || c.contains(*problem.home_node), c.length(),
               std::llround(sign * r[problem.objective] * den),
               std::llround(r[others[0]] * den), std::llround(r[others[1]] * den),
               0.0};
    if (problem.time_budget) {
      for (int id : c.arc_ids) {
        col.time += problem.time_budget->arc_durations[static_cast<std::size_t>(id - 1)];
      }
    }
    cols.push_back(col);
  }
  const DriftBound& ba = problem.bound(others[0]);
  const DriftBound& bb = problem.bound(others[1]);
  auto within = [den](std::int64_t v, const DriftBound& b) {
    // v / den in [lower, upper], compared exactly on the grid.
    const double lo = std::isfinite(b.lower) ? std::ceil(b.lower * den - 1e-9) : -detail::kInf;
    const double hi = std::isfinite(b.upper) ? std::floor(b.upper * den + 1e-9) : detail::kInf;
    return static_cast<double>(v) >= lo && static_cast<double>(v) <= hi;
  };

  std::vector<int> x(basis.size(), 0);
  std::optional<std::vector<int>> best;
  std::int64_t best_value = 0;
  std::uint64_t visited = 0;
  // Coefficient vectors are visited in increasing lexicographic order, so
  // keeping only strict improvements yields the smallest optimal vector.
  auto visit = [&](auto&& self, std::size_t i, int length, double time,
                   std::int64_t obj, std::int64_t da, std::int64_t db) -> void {
    if (i == cols.size()) {
      ++visited;
      if (length == 0) return;
      if (problem.time_budget && time > problem.time_budget->t_max + 1e-9) return;
      if (!within(da, ba) || !within(db, bb)) return;
      if (!best || obj > best_value) {
        best = x;
        best_value = obj;
      }
      return;
    }
    const Column& c = cols[i];
    const int max_count = c.usable ? (problem.l_max - length) / c.length : 0;
    for (int k = 0; k <= max_count; ++k) {
      x[i] = k;
      self(self, i + 1, length + k * c.length, time + k * c.time,
           obj + k * c.objective, da + k * c.drift_a, db + k * c.drift_b);
    }
    x[i] = 0;
  };
  visit(visit, 0, 0, 0.0, 0, 0, 0);
  if (!best) {
    return detail::make_solution({}, problem, basis, SolveStatus::kInfeasible, visited);
  }
  return detail::make_solution(*best, problem, basis, SolveStatus::kOptimal, visited);
}

// ---------------------------------------------------------------------------
// File formats.
//
// Problem:
//   {"objective": {"axis": "x", "sense": "maximize"},
//    "drift": {"y": [-1, 1], "theta": [-5, 5]},
//    "l_max": 15,
//    "time": {"t_max": 40, "arc_durations_ref": "durations.csv",
//             "default_duration": 2.5},
//    "home": "000",
//    "denominator": 4}
//
// Durations CSV (path relative to the problem file): header
// "from,to,seconds", one row per arc.
//
// Solution:
//   {"coefficients": {"17": 2}, "reward": [17, 1, 0], "length": 8,
//    "status": "optimal", "cycles": [{"index": 17, "count": 2,
//    "nodes": ["000", "001", "111", "100"]}]}
// Cycle indices are 1-based positions in the cycle basis.

inline std::vector<double> load_arc_durations(std::istream& in,
                                              const TransitionGraph& graph,
                                              std::optional<double> fallback) {
  const RobotSpec& spec = graph.spec();
  std::vector<std::optional<double>> durations(
      static_cast<std::size_t>(graph.arc_count()));
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    const auto fields = detail::split(text, ',');
    const std::string where = "durations line " + std::to_string(line_no);
    if (!header) {
      header = true;
      if (fields.size() != 3 || fields[0] != "from" || fields[1] != "to" ||
          fields[2] != "seconds") {
        throw ParseError(where + ": expected header 'from,to,seconds'");
      }
      continue;
    }
    if (fields.size() != 3) throw ParseError(where + ": expected 3 fields");
    const NodeId from = parse_node(spec, fields[0]);
    const NodeId to = parse_node(spec, fields[1]);
    const auto id = graph.arc_id(from, to);
    if (!id) throw DataError(where + ": no such arc");
    const auto secs = detail::parse_double(fields[2]);
    if (!secs || *secs < 0) {
      throw ParseError(where + ": 'seconds' must be a number >= 0");
    }
    durations[static_cast<std::size_t>(*id - 1)] = *secs;
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < durations.size(); ++k) {
    if (durations[k]) {
      out.push_back(*durations[k]);
    } else if (fallback) {
      out.push_back(*fallback);
    } else {
      const Arc& a = graph.arcs()[k];
      throw DataError("no duration for arc " + format_node(spec, a.from) + "->" +
                      format_node(spec, a.to) + " and no default_duration");
    }
  }
  return out;
}

inline GaitProblem problem_from_json(const nlohmann::json& j,
                                     const TransitionGraph& graph,
                                     const std::filesystem::path& base_dir = {}) {
  GaitProblem p;
  try {
    const auto& obj = j.at("objective");
    try {
      p.objective = parse_axis(obj.at("axis").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("objective.axis: ") + e.what());
    }
    const std::string sense = obj.value("sense", "maximize");
    if (sense == "maximize") {
      p.sense = Sense::kMaximize;
    } else if (sense == "minimize") {
      p.sense = Sense::kMinimize;
    } else {
      throw ParseError("objective.sense must be 'maximize' or 'minimize'");
    }
    if (j.contains("drift")) {
      for (const auto& [key, value] : j.at("drift").items()) {
        Axis axis;
        try {
          axis = parse_axis(key);
        } catch (const std::invalid_argument& e) {
          throw ParseError(std::string("drift: ") + e.what());
        }
        if (value.is_number()) {
          p.bound(axis) = DriftBound::symmetric(value.get<double>());
        } else if (value.is_array() && value.size() == 2) {
          p.bound(axis) = {value[0].get<double>(), value[1].get<double>()};
        } else {
          throw ParseError("drift." + key + " must be a number or [lo, hi]");
        }
      }
    }
    p.l_max = j.at("l_max").get<int>();
    p.denominator = j.value("denominator", 4);
    if (j.contains("home")) {
      p.home_node = parse_node(graph.spec(), j.at("home").get<std::string>());
    }
    if (j.contains("time")) {
      const auto& t = j.at("time");
      TimeBudget budget;
      budget.t_max = t.at("t_max").get<double>();
      std::optional<double> fallback;
      if (t.contains("default_duration")) {
        fallback = t.at("default_duration").get<double>();
      }
      if (t.contains("arc_durations_ref")) {
        const auto path = base_dir / t.at("arc_durations_ref").get<std::string>();
        std::ifstream in(path);
        if (!in) throw DataError("cannot open durations file " + path.string());
        budget.arc_durations = load_arc_durations(in, graph, fallback);
      } else if (fallback) {
        budget.arc_durations.assign(static_cast<std::size_t>(graph.arc_count()),
                                    *fallback);
      } else {
        throw ParseError("time needs arc_durations_ref or default_duration");
      }
      p.time_budget = std::move(budget);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("problem file: ") + e.what());
  }
  return p;
}

inline nlohmann::json to_json(const GaitSolution& s, const CycleBasis& basis,
                              const RobotSpec& spec) {
  nlohmann::json coeffs = nlohmann::json::object();
  nlohmann::json cycles = nlohmann::json::array();
  for (std::size_t i = 0; i < s.circulation.coefficients.size(); ++i) {
    const int x = s.circulation.coefficients[i];
    if (x == 0) continue;
    coeffs[std::to_string(i + 1)] = x;
    nlohmann::json nodes = nlohmann::json::array();
    for (NodeId v : basis.cycles[i].nodes) nodes.push_back(format_node(spec, v));
    cycles.push_back({{"index", i + 1}, {"count", x}, {"nodes", nodes}});
  }
  return {{"coefficients", coeffs},
          {"reward", {s.reward.dx, s.reward.dy, s.reward.dtheta}},
          {"length", s.length},
          {"status", std::string(status_name(s.status))},
          {"cycles", cycles}};
}

// Reads the coefficients of a solution file back against `basis`. When the
// file lists cycle node sequences they must match the basis.
inline Circulation circulation_from_json(const nlohmann::json& j,
                                         const CycleBasis& basis,
                                         const RobotSpec& spec) {
  Circulation c;
  c.coefficients.assign(basis.size(), 0);
  try {
    for (const auto& [key, value] : j.at("coefficients").items()) {
      const auto index = detail::parse_int(key);
      if (!index || *index < 1 || static_cast<std::size_t>(*index) > basis.size()) {
        throw DataError("solution refers to cycle " + key + " but the basis has " +
                        std::to_string(basis.size()) + " cycles");
      }
      const int x = value.get<int>();
      if (x < 0) throw DataError("negative coefficient for cycle " + key);
      c.coefficients[static_cast<std::size_t>(*index - 1)] = x;
    }
    if (j.contains("cycles")) {
      for (const auto& entry : j.at("cycles")) {
        const int index = entry.at("index").get<int>();
        if (index < 1 || static_cast<std::size_t>(index) > basis.size()) {
          throw DataError("solution cycle index " + std::to_string(index) +
                          " out of range");
        }
        std::vector<NodeId> nodes;
        for (const auto& s : entry.at("nodes")) {
          nodes.push_back(parse_node(spec, s.get<std::string>()));
        }
        if (nodes != basis.cycles[static_cast<std::size_t>(index - 1)].nodes) {
          throw DataError("solution cycle " + std::to_string(index) +
                          " does not match the current cycle basis");
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("solution file: ") + e.what());
  }
  return c;
}

}  // namespace softgait

#endif  // SOFTGAIT_GAIT_PLANNER_HPP_

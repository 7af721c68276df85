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

#ifndef SOFTGAIT_REWARD_LEARNING_HPP_
#define SOFTGAIT_REWARD_LEARNING_HPP_

// Surface-specific reward tables and their aggregation from repeated
// transition trials.
//
// Reward table CSV, one row per transition, states as behavior strings:
//
//   from,to,dx,dy,dtheta
//   111,100,5,0,0
//
// Observation log, JSON Lines, one trial per line:
//
//   {"from": "111", "to": "100", "dx": 5.1, "dy": 0, "dtheta": 0.2,
//    "weight": 1, "trial": 3}

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "softgait/detail/text.hpp"
#include "softgait/errors.hpp"
#include "softgait/reward.hpp"
#include "softgait/state_space.hpp"

namespace softgait {

struct ObservationRecord {
  State from_state;
  State to_state;
  double dx = 0.0;
  double dy = 0.0;
  double dtheta = 0.0;
  double weight = 1.0;
  std::optional<int> trial;
};

using TransitionKey = std::pair<State, State>;

struct RewardTable {
  std::string surface;
  std::map<TransitionKey, RewardVector> entries;
  // Number of trials behind each entry; empty for tables loaded from CSV.
  std::map<TransitionKey, int> observation_counts;

  std::size_t size() const { return entries.size(); }

  const RewardVector* find(const State& from, const State& to) const {
    const auto it = entries.find({from, to});
    return it == entries.end() ? nullptr : &it->second;
  }
};

inline std::string format_transition(const TransitionKey& key) {
  return format_state(key.first) + "->" + format_state(key.second);
}

// Weighted mean of the displacement per transition. Transitions without
// records are absent from the result.
inline RewardTable aggregate_observations(
    const std::vector<ObservationRecord>& records) {
  struct Accumulator {
    RewardVector weighted_sum;
    double total_weight = 0.0;
    int count = 0;
  };
  std::map<TransitionKey, Accumulator> acc;
  for (const auto& r : records) {
    if (r.from_state == r.to_state) {
      throw DataError("observation for self-transition " +
                      format_state(r.from_state));
    }
    if (!(r.weight >= 0.0) || !std::isfinite(r.weight)) {
      throw DataError("observation " +
                      format_transition({r.from_state, r.to_state}) +
                      " has invalid weight " + detail::format_double(r.weight));
    }
    const RewardVector v{r.dx, r.dy, r.dtheta};
    if (!v.is_finite()) {
      throw DataError("observation " +
                      format_transition({r.from_state, r.to_state}) +
                      " has a non-finite displacement");
    }
    auto& a = acc[{r.from_state, r.to_state}];
    a.weighted_sum += r.weight * v;
    a.total_weight += r.weight;
    ++a.count;
  }

  RewardTable table;
  for (const auto& [key, a] : acc) {
    if (a.total_weight <= 0.0) {
      throw DegenerateWeightError("transition " + format_transition(key) +
                                  " has zero total weight");
    }
    const double total = a.total_weight;
    table.entries[key] = {a.weighted_sum.dx / total, a.weighted_sum.dy / total,
                          a.weighted_sum.dtheta / total};
    table.observation_counts[key] = a.count;
  }
  return table;
}

// Parses the reward CSV. Duplicate rows keep the last value and add a
// message to `warnings`.
inline RewardTable load_reward_table(std::istream& in, const RobotSpec& spec,
                                     std::vector<std::string>* warnings =
                                         nullptr) {
  RewardTable table;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    const auto fields = detail::split(text, ',');
    const std::string where = "line " + std::to_string(line_no);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != 5 || fields[0] != "from" || fields[1] != "to" ||
          fields[2] != "dx" || fields[3] != "dy" || fields[4] != "dtheta") {
        throw ParseError(where + ": expected header 'from,to,dx,dy,dtheta'");
      }
      continue;
    }
    if (fields.size() != 5) {
      throw ParseError(where + ": expected 5 fields, got " +
                       std::to_string(fields.size()));
    }
    State from;
    State to;
    try {
      from = parse_state(spec, fields[0]);
      to = parse_state(spec, fields[1]);
    } catch (const InvalidStateError& e) {
      throw InvalidStateError(where + ": " + e.what());
    }
    if (from == to) {
      throw InvalidTableError(where + ": self-transition " +
                              std::string(fields[0]));
    }
    static constexpr const char* kNames[] = {"dx", "dy", "dtheta"};
    double values[3];
    for (int k = 0; k < 3; ++k) {
      const auto v = detail::parse_double(fields[static_cast<std::size_t>(2 + k)]);
      if (!v) {
        throw ParseError(where + ": field '" + kNames[k] +
                         "' is not a finite number: '" +
                         std::string(fields[static_cast<std::size_t>(2 + k)]) +
                         "'");
      }
      values[k] = *v;
    }
    TransitionKey key{std::move(from), std::move(to)};
    if (table.entries.contains(key) && warnings != nullptr) {
      warnings->push_back(where + ": duplicate row for " +
                          format_transition(key) + ", keeping the last one");
    }
    table.entries[std::move(key)] = {values[0], values[1], values[2]};
  }
  return table;
}

inline void save_reward_table(std::ostream& out, const RewardTable& table) {
  out << "from,to,dx,dy,dtheta\n";
  for (const auto& [key, r] : table.entries) {
    out << format_state(key.first) << ',' << format_state(key.second) << ','
        << detail::format_double(r.dx) << ',' << detail::format_double(r.dy)
        << ',' << detail::format_double(r.dtheta) << '\n';
  }
}

inline std::vector<ObservationRecord> load_observations(std::istream& in,
                                                        const RobotSpec& spec) {
  std::vector<ObservationRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
    auto number = [&](const char* key, std::optional<double> fallback) {
      if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ParseError(where + ": missing field '" + key + "'");
      }
      if (!j[key].is_number()) {
        throw ParseError(where + ": field '" + key + "' is not a number");
      }
      return j[key].get<double>();
    };
    auto state = [&](const char* key) {
      if (!j.contains(key) || !j[key].is_string()) {
        throw ParseError(where + ": field '" + key + "' must be a state string");
      }
      try {
        return parse_state(spec, j[key].get<std::string>());
      } catch (const InvalidStateError& e) {
        throw InvalidStateError(where + ": " + e.what());
      }
    };
    ObservationRecord r;
    r.from_state = state("from");
    r.to_state = state("to");
    r.dx = number("dx", std::nullopt);
    r.dy = number("dy", std::nullopt);
    r.dtheta = number("dtheta", std::nullopt);
    r.weight = number("weight", 1.0);
    if (j.contains("trial")) {
      if (!j["trial"].is_number_integer()) {
        throw ParseError(where + ": field 'trial' is not an integer");
      }
      r.trial = j["trial"].get<int>();
    }
    if (r.from_state == r.to_state) {
      throw DataError(where + ": self-transition " + format_state(r.from_state));
    }
    if (r.weight < 0.0) {
      throw DataError(where + ": negative weight");
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace softgait

#endif  // SOFTGAIT_REWARD_LEARNING_HPP_

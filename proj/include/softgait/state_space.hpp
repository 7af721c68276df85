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

#ifndef SOFTGAIT_STATE_SPACE_HPP_
#define SOFTGAIT_STATE_SPACE_HPP_

// Discrete robot states and their 1-based node numbering.
//
// A robot is a list of subsystems, each with a fixed number of discrete
// behaviors. A state picks one behavior per subsystem; states are numbered
// in mixed radix with subsystem 1 as the most significant digit, so for
// three binary subsystems "110" is node 7 (one plus binary 110).

#include <compare>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "softgait/errors.hpp"

namespace softgait {

struct SubsystemSpec {
  std::string name;
  int behavior_count = 2;
};

// Largest state space accepted; keeps n(n-1) arc tables addressable.
inline constexpr std::int64_t kMaxStateCount = 1 << 16;

// Behavior digits beyond 9 render as lower-case letters.
inline constexpr int kMaxBehaviorCount = 36;

class RobotSpec {
 public:
  RobotSpec() = default;

  explicit RobotSpec(std::vector<SubsystemSpec> subsystems)
      : subsystems_(std::move(subsystems)) {
    if (subsystems_.empty()) {
      throw DataError("robot spec needs at least one subsystem");
    }
    state_count_ = 1;
    for (const auto& s : subsystems_) {
      if (s.behavior_count < 2 || s.behavior_count > kMaxBehaviorCount) {
        throw DataError("subsystem '" + s.name + "' has behavior count " +
                        std::to_string(s.behavior_count) + ", expected 2.." +
                        std::to_string(kMaxBehaviorCount));
      }
      state_count_ *= s.behavior_count;
      if (state_count_ > kMaxStateCount) {
        throw DataError("robot spec has more than " +
                        std::to_string(kMaxStateCount) + " states");
      }
    }
  }

  // m subsystems with b behaviors each, named "1".."m".
  static RobotSpec uniform(int subsystem_count, int behavior_count) {
    std::vector<SubsystemSpec> subs;
    for (int i = 1; i <= subsystem_count; ++i) {
      subs.push_back({std::to_string(i), behavior_count});
    }
    return RobotSpec(std::move(subs));
  }

  const std::vector<SubsystemSpec>& subsystems() const { return subsystems_; }
  int subsystem_count() const { return static_cast<int>(subsystems_.size()); }
  int behavior_count(int subsystem) const {
    return subsystems_.at(static_cast<std::size_t>(subsystem)).behavior_count;
  }
  int state_count() const { return static_cast<int>(state_count_); }

  bool operator==(const RobotSpec& other) const {
    if (subsystems_.size() != other.subsystems_.size()) return false;
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
      if (subsystems_[i].name != other.subsystems_[i].name ||
          subsystems_[i].behavior_count != other.subsystems_[i].behavior_count) {
        return false;
      }
    }
    return true;
  }

 private:
  std::vector<SubsystemSpec> subsystems_;
  std::int64_t state_count_ = 0;
};

// Behaviors indexed by subsystem (0-based here; subsystem 1 is behaviors[0]).
struct State {
  std::vector<int> behaviors;

  auto operator<=>(const State&) const = default;
};

struct NodeId {
  int index = 1;

  auto operator<=>(const NodeId&) const = default;
};

inline int state_count(const RobotSpec& spec) { return spec.state_count(); }

inline void validate_state(const RobotSpec& spec, const State& state) {
  if (static_cast<int>(state.behaviors.size()) != spec.subsystem_count()) {
    throw InvalidStateError("state has " +
                            std::to_string(state.behaviors.size()) +
                            " behaviors, robot has " +
                            std::to_string(spec.subsystem_count()) +
                            " subsystems");
  }
  for (int j = 0; j < spec.subsystem_count(); ++j) {
    const int b = state.behaviors[static_cast<std::size_t>(j)];
    if (b < 0 || b >= spec.behavior_count(j)) {
      throw InvalidStateError("behavior " + std::to_string(b) +
                              " out of range for subsystem " +
                              std::to_string(j + 1));
    }
  }
}

inline NodeId encode_state(const RobotSpec& spec, const State& state) {
  validate_state(spec, state);
  int value = 0;
  for (int j = 0; j < spec.subsystem_count(); ++j) {
    value = value * spec.behavior_count(j) +
            state.behaviors[static_cast<std::size_t>(j)];
  }
  return NodeId{value + 1};
}

inline State decode_node(const RobotSpec& spec, NodeId node) {
  if (node.index < 1 || node.index > spec.state_count()) {
    throw InvalidStateError("node N" + std::to_string(node.index) +
                            " outside 1.." +
                            std::to_string(spec.state_count()));
  }
  State state;
  state.behaviors.resize(static_cast<std::size_t>(spec.subsystem_count()));
  int value = node.index - 1;
  for (int j = spec.subsystem_count() - 1; j >= 0; --j) {
    const int radix = spec.behavior_count(j);
    state.behaviors[static_cast<std::size_t>(j)] = value % radix;
    value /= radix;
  }
  return state;
}

inline std::string format_state(const State& state) {
  std::string out;
  out.reserve(state.behaviors.size());
  for (int b : state.behaviors) {
    out.push_back(b < 10 ? static_cast<char>('0' + b)
                         : static_cast<char>('a' + (b - 10)));
  }
  return out;
}

inline std::string format_node(const RobotSpec& spec, NodeId node) {
  return format_state(decode_node(spec, node));
}

inline State parse_state(const RobotSpec& spec, std::string_view text) {
  State state;
  for (char c : text) {
    int b = -1;
    if (c >= '0' && c <= '9') {
      b = c - '0';
    } else if (c >= 'a' && c <= 'z') {
      b = c - 'a' + 10;
    } else {
      throw InvalidStateError("bad behavior character in state '" +
                              std::string(text) + "'");
    }
    state.behaviors.push_back(b);
  }
  try {
    validate_state(spec, state);
  } catch (const InvalidStateError& e) {
    throw InvalidStateError("unknown state '" + std::string(text) +
                            "': " + e.what());
  }
  return state;
}

inline NodeId parse_node(const RobotSpec& spec, std::string_view text) {
  return encode_state(spec, parse_state(spec, text));
}

// {"subsystems": [{"name": "front", "behaviors": 2}, ...]}
inline RobotSpec robot_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("subsystems") ||
      !j["subsystems"].is_array()) {
    throw ParseError("robot spec: expected object with 'subsystems' array");
  }
  std::vector<SubsystemSpec> subs;
  std::size_t i = 0;
  for (const auto& s : j["subsystems"]) {
    ++i;
    if (!s.is_object() || !s.contains("behaviors") ||
        !s["behaviors"].is_number_integer()) {
      throw ParseError("robot spec: subsystem " + std::to_string(i) +
                       " needs an integer 'behaviors' field");
    }
    SubsystemSpec spec;
    spec.name = s.value("name", std::to_string(i));
    spec.behavior_count = s["behaviors"].get<int>();
    subs.push_back(std::move(spec));
  }
  return RobotSpec(std::move(subs));
}

inline nlohmann::json to_json(const RobotSpec& spec) {
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& s : spec.subsystems()) {
    subs.push_back({{"name", s.name}, {"behaviors", s.behavior_count}});
  }
  return {{"subsystems", subs}};
}

inline RobotSpec load_robot_spec(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("robot spec: ") + e.what());
  }
  return robot_spec_from_json(j);
}

}  // namespace softgait

#endif  // SOFTGAIT_STATE_SPACE_HPP_

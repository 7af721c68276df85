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

#ifndef SOFTGAIT_REWARD_HPP_
#define SOFTGAIT_REWARD_HPP_

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "softgait/detail/text.hpp"

namespace softgait {

enum class Axis { kX = 0, kY = 1, kTheta = 2 };

inline constexpr Axis kAllAxes[] = {Axis::kX, Axis::kY, Axis::kTheta};

inline std::string_view axis_name(Axis axis) {
  switch (axis) {
    case Axis::kX: return "x";
    case Axis::kY: return "y";
    case Axis::kTheta: return "theta";
  }
  return "?";
}

inline Axis parse_axis(std::string_view name) {
  if (name == "x") return Axis::kX;
  if (name == "y") return Axis::kY;
  if (name == "theta") return Axis::kTheta;
  throw std::invalid_argument("unknown axis '" + std::string(name) +
                              "', expected x, y or theta");
}

// Planar displacement caused by one state transition: translation in length
// units, rotation in degrees.
struct RewardVector {
  double dx = 0.0;
  double dy = 0.0;
  double dtheta = 0.0;

  double operator[](Axis axis) const {
    switch (axis) {
      case Axis::kX: return dx;
      case Axis::kY: return dy;
      case Axis::kTheta: return dtheta;
    }
    return 0.0;
  }

  bool is_finite() const {
    return std::isfinite(dx) && std::isfinite(dy) && std::isfinite(dtheta);
  }

  RewardVector& operator+=(const RewardVector& o) {
    dx += o.dx;
    dy += o.dy;
    dtheta += o.dtheta;
    return *this;
  }

  friend RewardVector operator+(RewardVector a, const RewardVector& b) {
    return a += b;
  }
  friend RewardVector operator*(double s, const RewardVector& v) {
    return {s * v.dx, s * v.dy, s * v.dtheta};
  }
  friend bool operator==(const RewardVector&, const RewardVector&) = default;
};

inline std::string format_reward(const RewardVector& r) {
  return "[" + detail::format_double(r.dx) + ", " +
         detail::format_double(r.dy) + ", " +
         detail::format_double(r.dtheta) + "]";
}

}  // namespace softgait

#endif  // SOFTGAIT_REWARD_HPP_

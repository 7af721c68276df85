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

#ifndef SOFTGAIT_SOFTGAIT_HPP_
#define SOFTGAIT_SOFTGAIT_HPP_

#include "softgait/cycle_basis.hpp"
#include "softgait/errors.hpp"
#include "softgait/gait_planner.hpp"
#include "softgait/reward.hpp"
#include "softgait/reward_learning.hpp"
#include "softgait/rollout.hpp"
#include "softgait/state_space.hpp"
#include "softgait/transition_graph.hpp"

#endif  // SOFTGAIT_SOFTGAIT_HPP_

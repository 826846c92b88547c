/* Copyright 2026 The ARES Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <span>
#include <vector>

#include "ares/core/effort.h"
#include "ares/core/types.h"
#include "ares/routing/policy.h"
#include "json.hpp"

namespace ares::rl {

struct RewardConfig {
  double outcome_success = 5.0;
  PerEffort<double> cost_per_effort{-0.2, -0.5, -1.0};
  bool normalized = true;
  PerEffort<double> unnormalized_cost{-0.02, -0.06, -0.12};
  double format_penalty = -1.0;
};

// Throws ErrorCode::kConfigInvalid unless both cost tables strictly
// decrease in effort order and a success stays net positive: in
// unnormalized mode that means outcome_success > max_steps * |worst cost|.
void validate(const RewardConfig& config, int max_steps);

// A router-in-the-loop episode as the reward sees it.
struct RolloutRecord {
  Trajectory trajectory;
  std::vector<routing::RouterDecision> decisions;
  std::optional<int> format_violation_at;

  friend bool operator==(const RolloutRecord&, const RolloutRecord&) = default;
};

struct RewardBreakdown {
  double r_out = 0.0;
  double r_cost = 0.0;
  double r_form = 0.0;
  double total = 0.0;

  friend bool operator==(const RewardBreakdown&, const RewardBreakdown&) = default;
};

// r_out = +5 on success; r_form = -1 on a format violation; r_cost only on
// success, the per-turn mean of the effort costs (normalized) or their sum
// under the scaled-down table.
RewardBreakdown compute_reward(const RolloutRecord& record, const RewardConfig& config);

inline constexpr double kAdvantageEpsilon = 1e-8;

// (r - mean) / std with the population std; all zeros when std < 1e-8.
// Throws ErrorCode::kGroupTooSmall for fewer than two rewards.
std::vector<double> group_advantages(std::span<const double> rewards);

void to_json(nlohmann::json& j, const RewardBreakdown& r);
void from_json(const nlohmann::json& j, RewardBreakdown& r);
void to_json(nlohmann::json& j, const RolloutRecord& r);
void from_json(const nlohmann::json& j, RolloutRecord& r);
}  // namespace ares::rl

namespace ares::routing {
void to_json(nlohmann::json& j, const RouterDecision& d);
void from_json(const nlohmann::json& j, RouterDecision& d);
}  // namespace ares::routing

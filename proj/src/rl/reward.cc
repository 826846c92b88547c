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

#include "ares/rl/reward.h"

#include <cmath>
#include <numeric>

#include "ares/core/errors.h"

namespace ares::rl {

void validate(const RewardConfig& config, int max_steps) {
  auto check_table = [](const PerEffort<double>& t, const char* name) {
    for (std::size_t i = 1; i < kNumEfforts; ++i) {
      if (!(t[i] < t[i - 1])) {
        throw Error(ErrorCode::kConfigInvalid,
                    std::string(name) + " must strictly decrease from low to high");
      }
    }
    if (!(t[0] <= 0.0)) throw Error(ErrorCode::kConfigInvalid, std::string(name) + " must be <= 0");
  };
  check_table(config.cost_per_effort, "reward.cost");
  check_table(config.unnormalized_cost, "reward.unnormalized_cost");
  if (max_steps < 1) throw Error(ErrorCode::kConfigInvalid, "max_steps must be >= 1");
  const double worst = config.normalized
                           ? -config.cost_per_effort[index_of(EffortLevel::kHigh)]
                           : -config.unnormalized_cost[index_of(EffortLevel::kHigh)] * max_steps;
  if (!(config.outcome_success > worst)) {
    throw Error(ErrorCode::kConfigInvalid,
                "reward.outcome_success must exceed the largest possible cost penalty (" +
                    std::to_string(worst) + ")");
  }
}

RewardBreakdown compute_reward(const RolloutRecord& record, const RewardConfig& config) {
  RewardBreakdown r;
  const auto& t = record.trajectory;
  if (record.format_violation_at) r.r_form = config.format_penalty;
  if (t.success) {
    r.r_out = config.outcome_success;
    const auto& table = config.normalized ? config.cost_per_effort : config.unnormalized_cost;
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& turn : t.turns) {
      if (!turn.effort) continue;
      sum += table[index_of(*turn.effort)];
      ++n;
    }
    if (n > 0) r.r_cost = config.normalized ? sum / static_cast<double>(n) : sum;
  }
  r.total = r.r_out + r.r_cost + r.r_form;
  return r;
}

std::vector<double> group_advantages(std::span<const double> rewards) {
  if (rewards.size() < 2) {
    throw Error(ErrorCode::kGroupTooSmall,
                "group of " + std::to_string(rewards.size()) + " rollouts (need >= 2)");
  }
  const double n = static_cast<double>(rewards.size());
  const double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / n;
  double ss = 0.0;
  for (double r : rewards) ss += (r - mean) * (r - mean);
  const double sd = std::sqrt(ss / n);
  std::vector<double> out(rewards.size(), 0.0);
  if (sd < kAdvantageEpsilon) return out;
  for (std::size_t i = 0; i < rewards.size(); ++i) out[i] = (rewards[i] - mean) / sd;
  return out;
}

void to_json(nlohmann::json& j, const RewardBreakdown& r) {
  j = nlohmann::json{{"r_out", r.r_out}, {"r_cost", r.r_cost}, {"r_form", r.r_form}, {"total", r.total}};
}

void from_json(const nlohmann::json& j, RewardBreakdown& r) {
  r.r_out = j.at("r_out").get<double>();
  r.r_cost = j.at("r_cost").get<double>();
  r.r_form = j.at("r_form").get<double>();
  r.total = j.at("total").get<double>();
}

void to_json(nlohmann::json& j, const RolloutRecord& r) {
  j = nlohmann::json{{"trajectory", r.trajectory},
                     {"decisions", r.decisions},
                     {"format_violation_at", r.format_violation_at
                                                 ? nlohmann::json(*r.format_violation_at)
                                                 : nlohmann::json(nullptr)}};
}

void from_json(const nlohmann::json& j, RolloutRecord& r) {
  r.trajectory = j.at("trajectory").get<Trajectory>();
  r.decisions = j.at("decisions").get<std::vector<routing::RouterDecision>>();
  r.format_violation_at.reset();
  if (const auto& f = j.at("format_violation_at"); !f.is_null()) r.format_violation_at = f.get<int>();
}

}  // namespace ares::rl

namespace ares::routing {

void to_json(nlohmann::json& j, const RouterDecision& d) {
  j = nlohmann::json{{"effort", std::string(to_string(d.effort))},
                     {"rationale", d.rationale},
                     {"router_usage", d.router_usage}};
}

void from_json(const nlohmann::json& j, RouterDecision& d) {
  d.effort = parse_effort(j.at("effort").get<std::string>());
  d.rationale = j.value("rationale", std::string{});
  d.router_usage = j.value("router_usage", TokenUsage{});
}

}  // namespace ares::routing

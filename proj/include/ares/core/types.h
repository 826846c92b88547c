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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ares/core/effort.h"
#include "json.hpp"

namespace ares {

struct TokenUsage {
  std::int64_t reasoning_tokens = 0;
  std::int64_t action_tokens = 0;

  std::int64_t total() const { return reasoning_tokens + action_tokens; }

  TokenUsage& operator+=(const TokenUsage& o) {
    reasoning_tokens += o.reasoning_tokens;
    action_tokens += o.action_tokens;
    return *this;
  }
  friend bool operator==(const TokenUsage&, const TokenUsage&) = default;
};

// How a gold action is checked for functional equivalence.
enum class ActionDomain { kTool, kWeb, kSearch, kMessage };

std::string_view to_string(ActionDomain d);
ActionDomain parse_domain(std::string_view text);

struct Turn {
  int index = 1;  // 1-based
  std::string observation;  // o_t, seen before the action
  // Unset only on the turn where the router broke format: no action was
  // produced there.
  std::optional<EffortLevel> effort;
  std::string reasoning;
  std::string action;
  TokenUsage usage;
  // Tokens spent by the router choosing this turn's effort. Reported
  // separately from agent tokens.
  TokenUsage router_usage;
  // Per-turn override of the trajectory's verification domain.
  std::optional<ActionDomain> domain;

  friend bool operator==(const Turn&, const Turn&) = default;
};

enum class TerminatedBy { kCompleted, kMaxSteps, kFormatViolation };

std::string_view to_string(TerminatedBy t);
TerminatedBy parse_terminated_by(std::string_view text);

struct Trajectory {
  std::string task_id;
  std::string goal;
  std::vector<Turn> turns;
  bool success = false;
  TerminatedBy terminated_by = TerminatedBy::kCompleted;
  ActionDomain domain = ActionDomain::kWeb;

  std::int64_t total_cost() const;
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// Throws ErrorCode::kValidation when a structural invariant is broken.
void validate(const Trajectory& trajectory);

// Agent tokens generated at one turn: reasoning plus action.
std::int64_t step_cost(const Turn& turn);

// Domain used to verify a turn's action.
inline ActionDomain domain_of(const Trajectory& t, const Turn& turn) {
  return turn.domain.value_or(t.domain);
}

void to_json(nlohmann::json& j, const TokenUsage& u);
void from_json(const nlohmann::json& j, TokenUsage& u);
void to_json(nlohmann::json& j, const Turn& t);
void from_json(const nlohmann::json& j, Turn& t);
void to_json(nlohmann::json& j, const Trajectory& t);
void from_json(const nlohmann::json& j, Trajectory& t);

}  // namespace ares

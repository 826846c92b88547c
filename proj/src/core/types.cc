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

#include "ares/core/types.h"

#include <string>

#include "ares/core/errors.h"

namespace ares {

std::string_view to_string(ActionDomain d) {
  switch (d) {
    case ActionDomain::kTool: return "tool";
    case ActionDomain::kWeb: return "web";
    case ActionDomain::kSearch: return "search";
    case ActionDomain::kMessage: return "message";
  }
  return "web";
}

ActionDomain parse_domain(std::string_view text) {
  for (auto d : {ActionDomain::kTool, ActionDomain::kWeb, ActionDomain::kSearch,
                 ActionDomain::kMessage}) {
    if (text == to_string(d)) return d;
  }
  throw Error(ErrorCode::kParse, "unknown action domain '" + std::string(text) + "'");
}

std::string_view to_string(TerminatedBy t) {
  switch (t) {
    case TerminatedBy::kCompleted: return "completed";
    case TerminatedBy::kMaxSteps: return "max_steps";
    case TerminatedBy::kFormatViolation: return "format_violation";
  }
  return "completed";
}

TerminatedBy parse_terminated_by(std::string_view text) {
  for (auto t : {TerminatedBy::kCompleted, TerminatedBy::kMaxSteps,
                 TerminatedBy::kFormatViolation}) {
    if (text == to_string(t)) return t;
  }
  throw Error(ErrorCode::kParse, "unknown termination '" + std::string(text) + "'");
}

std::int64_t step_cost(const Turn& turn) { return turn.usage.total(); }

std::int64_t Trajectory::total_cost() const {
  std::int64_t sum = 0;
  for (const auto& t : turns) sum += step_cost(t);
  return sum;
}

void validate(const Trajectory& trajectory) {
  const auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kValidation,
                "trajectory '" + trajectory.task_id + "': " + why);
  };
  if (trajectory.turns.empty()) fail("has no turns");
  if (trajectory.success && trajectory.terminated_by != TerminatedBy::kCompleted) {
    fail("marked successful but not terminated by completion");
  }
  int prev = 0;
  for (const auto& turn : trajectory.turns) {
    if (turn.index <= prev) fail("turn indices are not strictly increasing");
    prev = turn.index;
    if (turn.usage.reasoning_tokens < 0 || turn.usage.action_tokens < 0) {
      fail("negative token usage at turn " + std::to_string(turn.index));
    }
    if (!turn.effort && !turn.action.empty()) {
      fail("turn " + std::to_string(turn.index) + " has an action but no effort");
    }
  }
}

void to_json(nlohmann::json& j, const TokenUsage& u) {
  j = nlohmann::json{{"reasoning_tokens", u.reasoning_tokens},
                     {"action_tokens", u.action_tokens}};
}

void from_json(const nlohmann::json& j, TokenUsage& u) {
  u.reasoning_tokens = j.value("reasoning_tokens", std::int64_t{0});
  u.action_tokens = j.value("action_tokens", std::int64_t{0});
}

void to_json(nlohmann::json& j, const Turn& t) {
  j = nlohmann::json{{"index", t.index},
                     {"observation", t.observation},
                     {"effort", nullptr},
                     {"reasoning", t.reasoning},
                     {"action", t.action},
                     {"usage", t.usage}};
  if (t.effort) j["effort"] = std::string(to_string(*t.effort));
  if (t.router_usage.total() != 0) j["router_usage"] = t.router_usage;
  if (t.domain) j["domain"] = std::string(to_string(*t.domain));
}

void from_json(const nlohmann::json& j, Turn& t) {
  t.index = j.at("index").get<int>();
  t.observation = j.value("observation", std::string{});
  t.effort.reset();
  if (auto it = j.find("effort"); it != j.end() && !it->is_null()) {
    t.effort = parse_effort(it->get<std::string>());
  }
  t.reasoning = j.value("reasoning", std::string{});
  t.action = j.value("action", std::string{});
  t.usage = j.value("usage", TokenUsage{});
  t.router_usage = j.value("router_usage", TokenUsage{});
  t.domain.reset();
  if (auto it = j.find("domain"); it != j.end() && !it->is_null()) {
    t.domain = parse_domain(it->get<std::string>());
  }
}

void to_json(nlohmann::json& j, const Trajectory& t) {
  j = nlohmann::json{{"task_id", t.task_id},
                     {"goal", t.goal},
                     {"domain", std::string(to_string(t.domain))},
                     {"success", t.success},
                     {"terminated_by", std::string(to_string(t.terminated_by))},
                     {"turns", t.turns}};
}

void from_json(const nlohmann::json& j, Trajectory& t) {
  t.task_id = j.at("task_id").get<std::string>();
  t.goal = j.value("goal", std::string{});
  t.domain = parse_domain(j.value("domain", std::string("web")));
  t.success = j.value("success", false);
  t.terminated_by = parse_terminated_by(j.value("terminated_by", std::string("completed")));
  t.turns = j.at("turns").get<std::vector<Turn>>();
}

}  // namespace ares

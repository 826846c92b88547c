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

#include "ares/pipeline/reference.h"

#include <stdexcept>

#include "ares/core/errors.h"
#include "ares/core/text.h"
#include "ares/routing/policy.h"

namespace ares::pipeline {

std::size_t select_reference(const std::vector<Trajectory>& candidates) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    if (!c.success) continue;
    if (!best) {
      best = i;
      continue;
    }
    const auto& b = candidates[*best];
    if (c.turns.size() < b.turns.size() ||
        (c.turns.size() == b.turns.size() && c.total_cost() < b.total_cost())) {
      best = i;
    }
  }
  if (!best) {
    throw Error(ErrorCode::kNoSuccess, "none of " + std::to_string(candidates.size()) +
                                           " samples succeeded");
  }
  return *best;
}

ReferenceTrajectory make_reference(Trajectory trajectory, int sample_index) {
  ReferenceTrajectory ref;
  for (const auto& turn : trajectory.turns) ref.gold_actions.push_back(turn.action);
  ref.trajectory = std::move(trajectory);
  ref.sample_index = sample_index;
  return ref;
}

ReferenceTrajectory collect_reference(const routing::TaskSpec& task,
                                      const EnvironmentFactory& make_env,
                                      gateway::AgentEndpoint& agent,
                                      const CollectOptions& options) {
  if (options.n_samples < 1) throw std::invalid_argument("collect_reference: n_samples < 1");
  const routing::FixedPolicy high(EffortLevel::kHigh);
  std::vector<Trajectory> candidates;
  candidates.reserve(static_cast<std::size_t>(options.n_samples));
  for (int i = 0; i < options.n_samples; ++i) {
    auto env = make_env();
    routing::EpisodeOptions eo;
    eo.max_steps = options.max_steps;
    eo.sample = static_cast<std::uint64_t>(i);
    eo.seed = options.seed;
    candidates.push_back(routing::run_episode(task, *env, high, agent, eo).trajectory);
  }
  try {
    const std::size_t chosen = select_reference(candidates);
    return make_reference(std::move(candidates[chosen]), static_cast<int>(chosen));
  } catch (const Error&) {
    throw Error(ErrorCode::kNoSuccess, "task '" + task.task_id + "': none of " +
                                           std::to_string(options.n_samples) +
                                           " samples succeeded");
  }
}

nlohmann::json to_row(const ReferenceTrajectory& ref) {
  nlohmann::json row = ref.trajectory;
  row["sample_index"] = ref.sample_index;
  return row;
}

ReferenceTrajectory reference_from_row(const nlohmann::json& row) {
  const bool imported = !row.contains("success");
  Trajectory t;
  try {
    if (imported && row.contains("turns") && row.at("turns").is_array()) {
      // External turns may omit their position.
      nlohmann::json copy = row;
      auto& turns = copy.at("turns");
      for (std::size_t i = 0; i < turns.size(); ++i) {
        if (turns[i].is_object() && !turns[i].contains("index")) turns[i]["index"] = i + 1;
      }
      t = copy.get<Trajectory>();
    } else {
      t = row.get<Trajectory>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kValidation, std::string("bad reference row: ") + e.what());
  }
  if (imported) {
    t.success = true;
    t.terminated_by = TerminatedBy::kCompleted;
  }
  if (!t.success) {
    throw Error(ErrorCode::kValidation, "reference '" + t.task_id + "' is not successful");
  }
  for (auto& turn : t.turns) {
    if (text::trim(turn.action).empty()) {
      throw Error(ErrorCode::kValidation, "reference '" + t.task_id + "' turn " +
                                              std::to_string(turn.index) + " has no action");
    }
    if (imported && !turn.effort) {
      // Imported turns carry no effort; treat them as produced at high.
      turn.effort = EffortLevel::kHigh;
    }
  }
  validate(t);
  return make_reference(std::move(t), row.value("sample_index", -1));
}

}  // namespace ares::pipeline

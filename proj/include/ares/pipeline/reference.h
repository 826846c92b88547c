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
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ares/core/types.h"
#include "ares/gateway/endpoint.h"
#include "ares/routing/episode.h"
#include "json.hpp"

namespace ares::pipeline {

// Most concise successful trajectory of a task. Its actions are the
// step-level gold answers.
struct ReferenceTrajectory {
  Trajectory trajectory;
  std::vector<std::string> gold_actions;
  int sample_index = 0;  // which Phase 1 sample was kept (-1 when imported)

  friend bool operator==(const ReferenceTrajectory&, const ReferenceTrajectory&) = default;
};

using EnvironmentFactory = std::function<std::unique_ptr<routing::Environment>()>;

struct CollectOptions {
  int n_samples = 4;
  int max_steps = 30;
  std::uint64_t seed = 0;
};

// Runs n_samples episodes at high effort and keeps the successful one with
// the fewest turns, then the lowest token cost, then the earliest sample.
// Throws ErrorCode::kNoSuccess when nothing succeeds.
ReferenceTrajectory collect_reference(const routing::TaskSpec& task,
                                      const EnvironmentFactory& make_env,
                                      gateway::AgentEndpoint& agent,
                                      const CollectOptions& options);

// Same selection rule over already-run candidates; exposed for testing.
// Returns the chosen index or throws kNoSuccess.
std::size_t select_reference(const std::vector<Trajectory>& candidates);

ReferenceTrajectory make_reference(Trajectory trajectory, int sample_index);

nlohmann::json to_row(const ReferenceTrajectory& ref);

// Reads a reference row. Also the import path for externally produced
// trajectories (task_id, goal, turns[] with observation and action on
// every turn); those are taken as successful. Throws kValidation.
ReferenceTrajectory reference_from_row(const nlohmann::json& row);

}  // namespace ares::pipeline

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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ares/core/types.h"
#include "ares/gateway/endpoint.h"
#include "ares/routing/policy.h"

namespace ares::routing {

struct StepOutcome {
  std::string observation;
  bool done = false;
  bool success = false;
};

// Adapter contract for an interactive task environment (benchmark or
// simulated). One instance serves one episode.
class Environment {
 public:
  virtual ~Environment() = default;
  // Starts the episode and returns the first observation.
  virtual std::string reset() = 0;
  virtual StepOutcome step(const std::string& action) = 0;
};

struct TaskSpec {
  std::string task_id;
  std::string goal;
  ActionDomain domain = ActionDomain::kWeb;
};

struct EpisodeOptions {
  int max_steps = 30;
  std::uint64_t sample = 0;
  std::uint64_t seed = 0;
};

// One router-in-the-loop episode.
struct Episode {
  Trajectory trajectory;
  std::vector<RouterDecision> decisions;  // one per turn that got an effort
  std::optional<int> format_violation_at;
  std::string violation_output;
};

// Seed passed to the agent at turn `index` of an episode.
std::uint64_t agent_turn_seed(const EpisodeOptions& options, const std::string& task_id,
                              int index);

// Decide effort, run the agent at that effort, apply the action, record the
// turn; stop on environment completion, max_steps, or a router format
// violation (recorded as a turn without effort, and a failure).
// Environment and endpoint errors propagate to the caller.
Episode run_episode(const TaskSpec& task, Environment& env, const Policy& policy,
                    gateway::AgentEndpoint& agent, const EpisodeOptions& options);

}  // namespace ares::routing

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

#include "ares/rl/rollout.h"

#include "ares/core/errors.h"

namespace ares::rl {

RolloutRecord rollout(const routing::TaskSpec& task, routing::Environment& env,
                      const routing::Policy& policy, gateway::AgentEndpoint& agent,
                      const routing::EpisodeOptions& options) {
  routing::Episode ep;
  try {
    ep = routing::run_episode(task, env, policy, agent, options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kOracleMiss || e.code() == ErrorCode::kConfigInvalid) throw;
    throw Error(ErrorCode::kInfrastructure, "rollout of '" + task.task_id + "': " + e.what());
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kInfrastructure, "rollout of '" + task.task_id + "': " + e.what());
  }
  return RolloutRecord{std::move(ep.trajectory), std::move(ep.decisions), ep.format_violation_at};
}

}  // namespace ares::rl

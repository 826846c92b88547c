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

#include "ares/routing/episode.h"

#include <stdexcept>

#include "ares/core/errors.h"
#include "ares/core/hash.h"
#include "ares/routing/context.h"

namespace ares::routing {

std::uint64_t agent_turn_seed(const EpisodeOptions& options, const std::string& task_id,
                              int index) {
  return SeedMixer(options.seed)
      .add(task_id)
      .add(options.sample)
      .add(static_cast<std::uint64_t>(index))
      .value();
}

Episode run_episode(const TaskSpec& task, Environment& env, const Policy& policy,
                    gateway::AgentEndpoint& agent, const EpisodeOptions& options) {
  if (options.max_steps < 1) throw std::invalid_argument("run_episode: max_steps must be >= 1");
  Episode ep;
  ep.trajectory.task_id = task.task_id;
  ep.trajectory.goal = task.goal;
  ep.trajectory.domain = task.domain;
  ep.trajectory.terminated_by = TerminatedBy::kMaxSteps;

  std::string observation = env.reset();
  auto& turns = ep.trajectory.turns;
  for (int t = 1; t <= options.max_steps; ++t) {
    const std::string context = serialize_context(task.goal, turns, observation);
    RouterDecision decision;
    try {
      decision = policy.decide(context, observation, StepKey{task.task_id, t, options.sample});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kFormatViolation) throw;
      Turn turn;
      turn.index = t;
      turn.observation = observation;
      turns.push_back(std::move(turn));
      ep.format_violation_at = t;
      ep.violation_output = e.what();
      ep.trajectory.success = false;
      ep.trajectory.terminated_by = TerminatedBy::kFormatViolation;
      return ep;
    }

    gateway::CompletionRequest request;
    request.history = context;
    request.observation = observation;
    request.effort = decision.effort;
    request.seed = agent_turn_seed(options, task.task_id, t);
    gateway::CompletionResult result = gateway::agent_complete(request, agent);

    Turn turn;
    turn.index = t;
    turn.observation = observation;
    turn.effort = decision.effort;
    turn.reasoning = std::move(result.reasoning);
    turn.action = std::move(result.action);
    turn.usage = result.usage;
    turn.router_usage = decision.router_usage;
    const StepOutcome outcome = env.step(turn.action);
    turns.push_back(std::move(turn));
    ep.decisions.push_back(std::move(decision));
    if (outcome.done) {
      ep.trajectory.success = outcome.success;
      ep.trajectory.terminated_by = TerminatedBy::kCompleted;
      return ep;
    }
    observation = outcome.observation;
  }
  return ep;
}

}  // namespace ares::routing

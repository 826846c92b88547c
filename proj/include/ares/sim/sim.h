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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ares/core/effort.h"
#include "ares/core/types.h"
#include "ares/gateway/endpoint.h"
#include "ares/routing/episode.h"
#include "json.hpp"

namespace ares::sim {

inline constexpr int kMaxTaskLength = 20;
inline constexpr int kMaxExhaustiveLength = 12;
// Action the simulated agent emits when it gets a step wrong. Never gold.
inline constexpr std::string_view kWrongAction = "noop";

struct SimTask {
  std::string task_id;
  std::string goal;
  std::vector<double> difficulties;  // one per step, in [0, 1]
  std::vector<std::string> gold_actions;

  int length() const { return static_cast<int>(difficulties.size()); }
};

// Throws ErrorCode::kValidation.
void validate(const SimTask& task);

enum class SimMode { kDeterministic, kStochastic };

struct SimAgentProfile {
  PerEffort<double> capability{0.3, 0.6, 0.9};
  PerEffort<std::int64_t> token_cost{15, 82, 634};
  std::int64_t action_tokens = 0;
  SimMode mode = SimMode::kDeterministic;
  std::uint64_t seed = 0;  // stochastic stream seed

  double capability_of(EffortLevel e) const { return capability[index_of(e)]; }
};

// Throws ErrorCode::kValidation unless capability and token cost are both
// strictly increasing in effort order.
void validate(const SimAgentProfile& profile);

struct LengthRange {
  int min = 3;
  int max = 8;
};

struct DifficultyDistribution {
  enum class Kind { kUniform, kConstant } kind = Kind::kUniform;
  double lo = 0.0;
  double hi = 1.0;  // for kConstant only `lo` is used

  // "uniform:<lo>:<hi>" or "constant:<v>". Throws kConfigInvalid.
  static DifficultyDistribution parse(std::string_view text);
  std::string to_string() const;
};

std::vector<SimTask> generate_tasks(std::uint64_t seed, int count, LengthRange lengths,
                                    const DifficultyDistribution& difficulty);

// Observation shown at 1-based `step`; it names the task and position.
std::string sim_observation(const SimTask& task, int step);

// Probability that `effort` reproduces the gold action at `step` in
// stochastic mode: clamp(capability - difficulty + 0.5, 0, 1).
double success_probability(const SimTask& task, int step, EffortLevel effort,
                           const SimAgentProfile& profile);

// Deterministic: gold iff capability >= difficulty. Stochastic: gold with
// success_probability, drawn from a stream keyed by (task, step, effort,
// trial). Throws ErrorCode::kStepOutOfRange.
gateway::CompletionResult sim_agent_complete(const SimTask& task, int step, EffortLevel effort,
                                             const SimAgentProfile& profile,
                                             std::uint64_t trial = 0);

// Least sufficient effort per step; nullopt marks an unsolvable step.
// Deterministic profiles only.
std::vector<std::optional<EffortLevel>> oracle_min_effort(const SimTask& task,
                                                          const SimAgentProfile& profile);

struct Assignment {
  std::vector<EffortLevel> efforts;
  double total_cost = 0.0;
};

// Exhaustive search over all 3^T assignments for the cheapest fully
// successful one; lexicographically smallest on cost ties. T <= 12.
// Throws ErrorCode::kNoSuccessfulAssignment.
Assignment oracle_best_assignment(const SimTask& task, const SimAgentProfile& profile,
                                  const PerEffort<double>& costs);

// Gold trajectory in the shared trajectory file format.
Trajectory to_gold_trajectory(const SimTask& task);
nlohmann::json to_task_row(const SimTask& task);
SimTask from_task_row(const nlohmann::json& row);

// Environment over one SimTask. A gold action advances to the next step;
// any other action ends the episode as a failure.
class SimEnvironment final : public routing::Environment {
 public:
  explicit SimEnvironment(SimTask task) : task_(std::move(task)) {}
  std::string reset() override;
  routing::StepOutcome step(const std::string& action) override;

 private:
  SimTask task_;
  int step_ = 1;
};

// The simulated agent behind the gateway's agent contract. It reads the
// task and step from the observation header; the request seed is the trial.
class SimAgentEndpoint final : public gateway::AgentEndpoint {
 public:
  SimAgentEndpoint(std::vector<SimTask> tasks, SimAgentProfile profile);
  gateway::CompletionResult complete(const gateway::CompletionRequest& request) override;

  const SimAgentProfile& profile() const { return profile_; }

 private:
  std::map<std::string, SimTask, std::less<>> tasks_;
  SimAgentProfile profile_;
};

routing::TaskSpec task_spec_of(const SimTask& task);

}  // namespace ares::sim

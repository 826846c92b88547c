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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ares/core/effort.h"
#include "ares/core/types.h"
#include "ares/core/work_pool.h"
#include "ares/gateway/endpoint.h"
#include "ares/pipeline/reference.h"
#include "ares/pipeline/verify.h"
#include "json.hpp"

namespace ares::pipeline {

enum class Fallback { kDiscard, kLowestHighestAccuracy };

std::string_view to_string(Fallback f);
// "discard" or "lowest_highest_accuracy". Throws kConfigInvalid.
Fallback parse_fallback(std::string_view text);

struct AnnotationConfig {
  int trials_k = 3;
  int threshold_m = 3;
  Fallback fallback = Fallback::kLowestHighestAccuracy;
  int samples_n = 4;  // Phase 1 samples per task
  int max_steps = 30;
  ToolIgnoreList tool_ignore;
  std::uint64_t seed = 0;
};

// Throws ErrorCode::kConfigInvalid unless 1 <= M <= K and N >= 1.
void validate(const AnnotationConfig& config);

using TrialMatrix = PerEffort<std::vector<bool>>;

struct StepLabel {
  std::string task_id;
  int step_index = 1;  // 1-based turn of the reference
  TrialMatrix trial_matrix;
  std::vector<EffortLevel> sufficiency_set;  // ascending
  std::optional<EffortLevel> label;
  bool via_fallback = false;
  bool discarded = false;
  // First trial's reply at each level; shown to the rationale teacher.
  std::map<EffortLevel, std::string> responses_by_effort;

  friend bool operator==(const StepLabel&, const StepLabel&) = default;
};

// {e : successes(e) >= m}, ascending.
std::vector<EffortLevel> sufficiency_set(const TrialMatrix& matrix, int m);

// Fills sufficiency_set, label, via_fallback and discarded from the matrix.
void assign_label(StepLabel& step, int m, Fallback fallback);

// Seed for trial k of effort e at a step.
std::uint64_t trial_seed(std::uint64_t base, const std::string& task_id, int step,
                         EffortLevel effort, int trial);

// What one step of annotation sees: the recorded prefix, never the
// annotator's own actions.
struct StepInput {
  std::string task_id;
  std::string goal;
  std::span<const Turn> history;
  std::string observation;
  std::string gold_action;
  ActionDomain domain = ActionDomain::kWeb;
};

StepInput step_input(const ReferenceTrajectory& ref, int step_index);

// K trials at each of the three levels. Agent or judge errors abort the
// step with ErrorCode::kStepAnnotationFailed.
StepLabel annotate_step(const StepInput& input, int step_index, const AnnotationConfig& config,
                        gateway::AgentEndpoint& agent, gateway::JudgeEndpoint* judge,
                        const WorkPool& pool = WorkPool(1));

// Every step of the reference, all 3*K*T calls fanned out over the pool.
// Failed steps are collected and reported together as kStepAnnotationFailed.
std::vector<StepLabel> annotate_trajectory(const ReferenceTrajectory& ref,
                                           const AnnotationConfig& config,
                                           gateway::AgentEndpoint& agent,
                                           gateway::JudgeEndpoint* judge,
                                           const WorkPool& pool = WorkPool(1));

void to_json(nlohmann::json& j, const StepLabel& s);
void from_json(const nlohmann::json& j, StepLabel& s);

}  // namespace ares::pipeline

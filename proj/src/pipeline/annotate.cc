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

#include "ares/pipeline/annotate.h"

#include <algorithm>

#include "ares/core/errors.h"
#include "ares/core/hash.h"
#include "ares/routing/context.h"

namespace ares::pipeline {

std::string_view to_string(Fallback f) {
  return f == Fallback::kDiscard ? "discard" : "lowest_highest_accuracy";
}

Fallback parse_fallback(std::string_view text) {
  if (text == "discard") return Fallback::kDiscard;
  if (text == "lowest_highest_accuracy") return Fallback::kLowestHighestAccuracy;
  throw Error(ErrorCode::kConfigInvalid, "unknown fallback '" + std::string(text) + "'");
}

void validate(const AnnotationConfig& config) {
  if (config.trials_k < 1) throw Error(ErrorCode::kConfigInvalid, "annotation.trials_k must be >= 1");
  if (config.threshold_m < 1 || config.threshold_m > config.trials_k) {
    throw Error(ErrorCode::kConfigInvalid,
                "annotation.threshold_m must be in [1, trials_k], got M=" +
                    std::to_string(config.threshold_m) + " K=" + std::to_string(config.trials_k));
  }
  if (config.samples_n < 1) throw Error(ErrorCode::kConfigInvalid, "annotation.samples_n must be >= 1");
  if (config.max_steps < 1) throw Error(ErrorCode::kConfigInvalid, "annotation.max_steps must be >= 1");
}

std::vector<EffortLevel> sufficiency_set(const TrialMatrix& matrix, int m) {
  std::vector<EffortLevel> out;
  for (EffortLevel e : kAllEfforts) {
    const auto& row = matrix[index_of(e)];
    if (std::count(row.begin(), row.end(), true) >= m) out.push_back(e);
  }
  return out;
}

void assign_label(StepLabel& step, int m, Fallback fallback) {
  step.sufficiency_set = sufficiency_set(step.trial_matrix, m);
  step.label.reset();
  step.via_fallback = false;
  step.discarded = false;
  if (!step.sufficiency_set.empty()) {
    step.label = step.sufficiency_set.front();
    return;
  }
  if (fallback == Fallback::kDiscard) {
    step.discarded = true;
    return;
  }
  // Highest trial accuracy wins; the strict comparison keeps the lower
  // effort on ties.
  std::ptrdiff_t best = -1;
  for (EffortLevel e : kAllEfforts) {
    const auto& row = step.trial_matrix[index_of(e)];
    const auto hits = std::count(row.begin(), row.end(), true);
    if (hits > best) {
      best = hits;
      step.label = e;
    }
  }
  step.via_fallback = true;
}

std::uint64_t trial_seed(std::uint64_t base, const std::string& task_id, int step,
                         EffortLevel effort, int trial) {
  return SeedMixer(base)
      .add("trial")
      .add(task_id)
      .add(static_cast<std::uint64_t>(step))
      .add(static_cast<std::uint64_t>(index_of(effort)))
      .add(static_cast<std::uint64_t>(trial))
      .value();
}

StepInput step_input(const ReferenceTrajectory& ref, int step_index) {
  const auto& turns = ref.trajectory.turns;
  if (step_index < 1 || step_index > static_cast<int>(turns.size())) {
    throw Error(ErrorCode::kStepOutOfRange, "step " + std::to_string(step_index) + " of '" +
                                                ref.trajectory.task_id + "'");
  }
  const auto i = static_cast<std::size_t>(step_index - 1);
  StepInput in;
  in.task_id = ref.trajectory.task_id;
  in.goal = ref.trajectory.goal;
  in.history = std::span<const Turn>(turns.data(), i);
  in.observation = turns[i].observation;
  in.gold_action = ref.gold_actions.at(i);
  in.domain = domain_of(ref.trajectory, turns[i]);
  return in;
}

namespace {

struct TrialOutcome {
  bool correct = false;
  std::string response;
  std::string error;  // nonempty on failure
};

TrialOutcome run_trial(const StepInput& in, const std::string& context, int step_index,
                       EffortLevel effort, int trial, const AnnotationConfig& config,
                       gateway::AgentEndpoint& agent, gateway::JudgeEndpoint* judge) {
  TrialOutcome out;
  try {
    gateway::CompletionRequest req;
    req.history = context;
    req.observation = in.observation;
    req.effort = effort;
    req.seed = trial_seed(config.seed, in.task_id, step_index, effort, trial);
    const gateway::CompletionResult r = gateway::agent_complete(req, agent);
    out.response = r.raw.empty() ? "REASON: " + r.reasoning + "\nACTION: " + r.action : r.raw;
    out.correct = verify_action(r.action, in.gold_action, in.domain, judge, config.tool_ignore);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

StepLabel assemble(const std::string& task_id, int step_index, const AnnotationConfig& config,
                   const TrialOutcome* outcomes) {
  StepLabel label;
  label.task_id = task_id;
  label.step_index = step_index;
  const auto k = static_cast<std::size_t>(config.trials_k);
  for (EffortLevel e : kAllEfforts) {
    auto& row = label.trial_matrix[index_of(e)];
    for (std::size_t t = 0; t < k; ++t) {
      const TrialOutcome& o = outcomes[index_of(e) * k + t];
      if (!o.error.empty()) {
        throw Error(ErrorCode::kStepAnnotationFailed,
                    "task '" + task_id + "' step " + std::to_string(step_index) + " (" +
                        std::string(to_string(e)) + ", trial " + std::to_string(t) +
                        "): " + o.error);
      }
      row.push_back(o.correct);
      if (t == 0) label.responses_by_effort[e] = o.response;
    }
  }
  assign_label(label, config.threshold_m, config.fallback);
  return label;
}

}  // namespace

StepLabel annotate_step(const StepInput& input, int step_index, const AnnotationConfig& config,
                        gateway::AgentEndpoint& agent, gateway::JudgeEndpoint* judge,
                        const WorkPool& pool) {
  validate(config);
  const std::string context = routing::serialize_context(input.goal, input.history, input.observation);
  const auto k = static_cast<std::size_t>(config.trials_k);
  const auto outcomes = pool.map(kNumEfforts * k, [&](std::size_t i) {
    return run_trial(input, context, step_index, kAllEfforts[i / k], static_cast<int>(i % k),
                     config, agent, judge);
  });
  return assemble(input.task_id, step_index, config, outcomes.data());
}

std::vector<StepLabel> annotate_trajectory(const ReferenceTrajectory& ref,
                                           const AnnotationConfig& config,
                                           gateway::AgentEndpoint& agent,
                                           gateway::JudgeEndpoint* judge, const WorkPool& pool) {
  validate(config);
  const int steps = static_cast<int>(ref.trajectory.turns.size());
  std::vector<StepInput> inputs;
  std::vector<std::string> contexts;
  for (int s = 1; s <= steps; ++s) {
    inputs.push_back(step_input(ref, s));
    contexts.push_back(routing::serialize_context(inputs.back().goal, inputs.back().history,
                                                  inputs.back().observation));
  }
  const auto k = static_cast<std::size_t>(config.trials_k);
  const std::size_t per_step = kNumEfforts * k;
  const auto outcomes = pool.map(per_step * inputs.size(), [&](std::size_t i) {
    const std::size_t s = i / per_step;
    const std::size_t j = i % per_step;
    return run_trial(inputs[s], contexts[s], static_cast<int>(s) + 1, kAllEfforts[j / k],
                     static_cast<int>(j % k), config, agent, judge);
  });

  std::vector<StepLabel> labels;
  std::string failures;
  int failed = 0;
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    try {
      labels.push_back(assemble(ref.trajectory.task_id, static_cast<int>(s) + 1, config,
                                outcomes.data() + s * per_step));
    } catch (const Error& e) {
      ++failed;
      failures += "\n  ";
      failures += e.what();
    }
  }
  if (failed > 0) {
    throw Error(ErrorCode::kStepAnnotationFailed,
                std::to_string(failed) + " of " + std::to_string(steps) + " steps failed" + failures);
  }
  return labels;
}

void to_json(nlohmann::json& j, const StepLabel& s) {
  nlohmann::json matrix = nlohmann::json::object();
  nlohmann::json responses = nlohmann::json::object();
  for (EffortLevel e : kAllEfforts) {
    matrix[std::string(to_string(e))] = s.trial_matrix[index_of(e)];
    if (auto it = s.responses_by_effort.find(e); it != s.responses_by_effort.end()) {
      responses[std::string(to_string(e))] = it->second;
    }
  }
  nlohmann::json set = nlohmann::json::array();
  for (EffortLevel e : s.sufficiency_set) set.push_back(std::string(to_string(e)));
  j = nlohmann::json{{"task_id", s.task_id},
                     {"step_index", s.step_index},
                     {"trial_matrix", matrix},
                     {"sufficiency_set", set},
                     {"label", s.label ? nlohmann::json(std::string(to_string(*s.label)))
                                       : nlohmann::json(nullptr)},
                     {"via_fallback", s.via_fallback},
                     {"discarded", s.discarded},
                     {"responses", responses}};
}

void from_json(const nlohmann::json& j, StepLabel& s) {
  s = StepLabel{};
  s.task_id = j.at("task_id").get<std::string>();
  s.step_index = j.at("step_index").get<int>();
  const auto& matrix = j.at("trial_matrix");
  for (EffortLevel e : kAllEfforts) {
    s.trial_matrix[index_of(e)] = matrix.at(std::string(to_string(e))).get<std::vector<bool>>();
  }
  for (const auto& e : j.at("sufficiency_set")) s.sufficiency_set.push_back(parse_effort(e.get<std::string>()));
  if (const auto& l = j.at("label"); !l.is_null()) s.label = parse_effort(l.get<std::string>());
  s.via_fallback = j.value("via_fallback", false);
  s.discarded = j.value("discarded", false);
  if (auto it = j.find("responses"); it != j.end()) {
    for (const auto& [k, v] : it->items()) s.responses_by_effort[parse_effort(k)] = v.get<std::string>();
  }
}

}  // namespace ares::pipeline

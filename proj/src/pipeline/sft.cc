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

#include "ares/pipeline/sft.h"

#include "ares/core/errors.h"
#include "ares/core/text.h"
#include "ares/routing/context.h"

namespace ares::pipeline {

std::string SftExample::target() const {
  return rationale + "\n" + std::string(to_string(label));
}

void validate_rationale(std::string_view rationale) {
  if (text::trim(rationale).empty()) throw Error(ErrorCode::kValidation, "empty rationale");
  const auto n = text::split_sentences(rationale).size();
  if (n > static_cast<std::size_t>(gateway::kMaxRationaleSentences)) {
    throw Error(ErrorCode::kValidation,
                "rationale has " + std::to_string(n) + " sentences (at most 5 allowed)");
  }
}

SftExample build_sft_example(std::span<const Turn> history, std::string_view observation,
                             std::string_view goal, EffortLevel label, std::string rationale,
                             const gateway::PromptRegistry& prompts) {
  validate_rationale(rationale);
  SftExample e;
  e.system_prompt = prompts.get(gateway::prompt_id::kSftSystem);
  e.user_prompt = routing::serialize_context(goal, history, observation);
  e.rationale = std::move(rationale);
  e.label = label;
  return e;
}

DatasetStats dataset_stats(std::span<const SftExample> examples) {
  DatasetStats s;
  for (const auto& e : examples) {
    ++s.total;
    ++s.per_label[index_of(e.label)];
  }
  return s;
}

nlohmann::json to_row(const SftExample& e) {
  return nlohmann::json{{"system", e.system_prompt},
                        {"user", e.user_prompt},
                        {"rationale", e.rationale},
                        {"label", std::string(to_string(e.label))}};
}

SftExample sft_example_from_row(const nlohmann::json& row) {
  SftExample e;
  e.system_prompt = row.at("system").get<std::string>();
  e.user_prompt = row.at("user").get<std::string>();
  e.rationale = row.at("rationale").get<std::string>();
  e.label = parse_effort(row.at("label").get<std::string>());
  return e;
}

nlohmann::json to_json(const DatasetStats& s) {
  nlohmann::json j{{"total", s.total}};
  for (EffortLevel e : kAllEfforts) j[std::string(to_string(e))] = s.per_label[index_of(e)];
  return j;
}

DatasetStats emit_dataset(std::span<const SftExample> examples,
                          const std::filesystem::path& path, const Manifest& manifest) {
  if (examples.empty()) throw Error(ErrorCode::kEmptyInput, "no SFT examples to emit");
  std::vector<nlohmann::json> rows;
  rows.reserve(examples.size());
  for (const auto& e : examples) {
    validate_rationale(e.rationale);
    rows.push_back(to_row(e));
  }
  const DatasetStats stats = dataset_stats(examples);
  Manifest m = manifest;
  m.extra["stats"] = to_json(stats);
  write_jsonl(path, m, rows);
  return stats;
}

std::vector<SftExample> read_dataset(const std::filesystem::path& path) {
  const JsonlFile file = read_jsonl(path);
  std::vector<SftExample> out;
  out.reserve(file.rows.size());
  for (std::size_t i = 0; i < file.rows.size(); ++i) {
    try {
      out.push_back(sft_example_from_row(file.rows[i]));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kParse, path.string() + " row " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

RationaleRecord rationalize_step(const ReferenceTrajectory& ref, const StepLabel& label,
                                 gateway::TeacherEndpoint& teacher) {
  if (!label.label) {
    throw Error(ErrorCode::kValidation, "step " + std::to_string(label.step_index) + " of '" +
                                            label.task_id + "' has no label");
  }
  const StepInput in = step_input(ref, label.step_index);
  const std::string context = routing::serialize_context(in.goal, in.history, in.observation);
  RationaleRecord r;
  r.task_id = label.task_id;
  r.step_index = label.step_index;
  r.label = *label.label;
  r.rationale = gateway::teacher_rationalize(context, r.label, label.responses_by_effort, teacher);
  return r;
}

nlohmann::json to_row(const RationaleRecord& r) {
  return nlohmann::json{{"task_id", r.task_id},
                        {"step_index", r.step_index},
                        {"label", std::string(to_string(r.label))},
                        {"rationale", r.rationale}};
}

RationaleRecord rationale_from_row(const nlohmann::json& row) {
  RationaleRecord r;
  r.task_id = row.at("task_id").get<std::string>();
  r.step_index = row.at("step_index").get<int>();
  r.label = parse_effort(row.at("label").get<std::string>());
  r.rationale = row.at("rationale").get<std::string>();
  return r;
}

SftExample sft_example_for(const ReferenceTrajectory& ref, const RationaleRecord& r,
                           const gateway::PromptRegistry& prompts) {
  const StepInput in = step_input(ref, r.step_index);
  return build_sft_example(in.history, in.observation, in.goal, r.label, r.rationale, prompts);
}

}  // namespace ares::pipeline

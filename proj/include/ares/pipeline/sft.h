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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ares/core/effort.h"
#include "ares/core/jsonl.h"
#include "ares/core/types.h"
#include "ares/gateway/endpoint.h"
#include "ares/gateway/prompts.h"
#include "ares/pipeline/annotate.h"
#include "ares/pipeline/reference.h"
#include "json.hpp"

namespace ares::pipeline {

// One router training row. The training target is the rationale followed
// by the label word on its own final line.
struct SftExample {
  std::string system_prompt;
  std::string user_prompt;
  std::string rationale;
  EffortLevel label = EffortLevel::kHigh;

  std::string target() const;
  friend bool operator==(const SftExample&, const SftExample&) = default;
};

// Throws ErrorCode::kValidation for an empty rationale or one longer than
// five sentences.
void validate_rationale(std::string_view rationale);

SftExample build_sft_example(std::span<const Turn> history, std::string_view observation,
                             std::string_view goal, EffortLevel label, std::string rationale,
                             const gateway::PromptRegistry& prompts);

struct DatasetStats {
  std::int64_t total = 0;
  PerEffort<std::int64_t> per_label{};

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

DatasetStats dataset_stats(std::span<const SftExample> examples);

// One {system, user, rationale, label} object per line after the manifest.
// Throws kEmptyInput for no examples and kValidation for a bad rationale.
DatasetStats emit_dataset(std::span<const SftExample> examples,
                          const std::filesystem::path& path, const Manifest& manifest);

std::vector<SftExample> read_dataset(const std::filesystem::path& path);

nlohmann::json to_row(const SftExample& e);
SftExample sft_example_from_row(const nlohmann::json& row);
nlohmann::json to_json(const DatasetStats& s);

// Teacher rationale for one labeled step.
struct RationaleRecord {
  std::string task_id;
  int step_index = 1;
  EffortLevel label = EffortLevel::kHigh;
  std::string rationale;

  friend bool operator==(const RationaleRecord&, const RationaleRecord&) = default;
};

RationaleRecord rationalize_step(const ReferenceTrajectory& ref, const StepLabel& label,
                                 gateway::TeacherEndpoint& teacher);

nlohmann::json to_row(const RationaleRecord& r);
RationaleRecord rationale_from_row(const nlohmann::json& row);

// SFT example for a rationalized step of its reference.
SftExample sft_example_for(const ReferenceTrajectory& ref, const RationaleRecord& r,
                           const gateway::PromptRegistry& prompts);

}  // namespace ares::pipeline

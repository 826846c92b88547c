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

#include "ares/core/jsonl.h"
#include "ares/rl/reward.h"
#include "json.hpp"

namespace ares::rl {

// Hyperparameters of the external GRPO trainer. Written into the export
// manifest for the trainer's benefit; nothing here consumes them.
struct TrainerMeta {
  double kl_coef = 0.01;
  double learning_rate = 1.5e-6;
  int epochs = 5;
  int batch_size = 32;
  int group_size = 16;
};

nlohmann::json to_json(const TrainerMeta& m);

// One rollout in training form: per routed turn, the router input, the
// router's rationale and the chosen effort.
struct RlRecord {
  std::string prompt_id;
  int group_index = 0;
  std::vector<std::string> context;
  std::vector<std::string> rationale;
  std::vector<EffortLevel> effort_sequence;
  RewardBreakdown reward;
  double advantage = 0.0;

  friend bool operator==(const RlRecord&, const RlRecord&) = default;
};

// Turns without a routing decision (a format violation) contribute no
// context row.
RlRecord make_rl_record(const std::string& prompt_id, int group_index, const RolloutRecord& rollout,
                        const RewardBreakdown& reward, double advantage);

// Writes the manifest (carrying `meta`) and one line per record, returning
// the number of records written. Throws ErrorCode::kIo.
std::size_t export_rl_records(std::span<const RlRecord> records, const std::filesystem::path& path,
                              const Manifest& manifest, const TrainerMeta& meta);

std::vector<RlRecord> read_rl_records(const std::filesystem::path& path);

void to_json(nlohmann::json& j, const RlRecord& r);
void from_json(const nlohmann::json& j, RlRecord& r);

}  // namespace ares::rl

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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ares/gateway/http.h"
#include "ares/pipeline/annotate.h"
#include "ares/rl/export.h"
#include "ares/rl/filter.h"
#include "ares/rl/reward.h"
#include "ares/routing/policy.h"
#include "ares/sim/sim.h"
#include "json.hpp"

namespace ares::cli {

struct RlConfig {
  int rollouts_per_prompt = 8;
  int max_steps = 30;
  rl::FilterOptions filter;
  rl::TrainerMeta trainer;  // trainer.group_size is the GRPO group G
};

struct SimConfig {
  int count = 20;
  sim::LengthRange lengths;
  sim::DifficultyDistribution difficulty;
  sim::SimAgentProfile profile;
};

struct Roles {
  std::string agent = "sim";
  std::string judge = "stub";
  std::string teacher = "stub";
};

struct Paths {
  std::string prompts_dir;  // empty: built-in templates only
  std::string import;       // external trajectories for `collect --import`
};

struct RunConfig {
  std::map<std::string, gateway::EndpointConfig> endpoints;
  Roles roles;
  pipeline::AnnotationConfig annotation;
  rl::RewardConfig reward;
  RlConfig rl;
  SimConfig sim;
  std::string policy = "fixed:high";
  Paths paths;
  std::uint64_t seed = 1;
  int jobs = 0;  // 0: one per logical CPU
};

// Parses the flat `key = value` format. `#` starts a comment at line start
// or after whitespace. Errors name the origin and line.
// Throws ErrorCode::kConfigInvalid.
RunConfig parse_config(std::string_view text, std::string_view origin = "<config>");

// Throws kMissingInput when the file is absent.
RunConfig load_config(const std::filesystem::path& path);

// Checks cross-field invariants: M <= K, rewards net positive, roles and
// llm policies name known endpoints. Built-in "sim" and "stub" always
// exist. Throws kConfigInvalid.
void validate(const RunConfig& config);

// Effective settings, excluding `jobs`, which never changes outputs.
nlohmann::json to_json(const RunConfig& config);
std::string config_hash(const RunConfig& config);

// Endpoint by name, including the implicit "sim" and "stub".
gateway::EndpointConfig endpoint(const RunConfig& config, const std::string& name);

}  // namespace ares::cli

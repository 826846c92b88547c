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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace ares::rl {

struct RolloutOutcome {
  bool success = false;
  double reward = 0.0;
  friend bool operator==(const RolloutOutcome&, const RolloutOutcome&) = default;
};

struct PromptPoolEntry {
  std::string prompt_id;
  std::vector<RolloutOutcome> rollouts;

  double sr() const;
  // Population variance of the total rewards.
  double reward_variance() const;
  friend bool operator==(const PromptPoolEntry&, const PromptPoolEntry&) = default;
};

struct FilterOptions {
  double variance_quantile = 0.30;
  // Entries with 0 < SR < 1 are kept unless this is cleared.
  bool keep_mixed = true;
  // Reuse a cutoff from an earlier pass instead of ranking this pool.
  std::optional<double> variance_cutoff;
};

enum class FilterReason { kZeroSuccess, kHighVariance, kLowVariance, kMixed, kMixedDropped };

std::string_view to_string(FilterReason r);

struct FilterDecision {
  std::string prompt_id;
  double sr = 0.0;
  double reward_variance = 0.0;
  bool kept = false;
  FilterReason reason = FilterReason::kZeroSuccess;
};

struct FilterReport {
  std::vector<FilterDecision> decisions;  // pool order
  // Lowest variance kept among SR = 1 entries; unset when none are kept.
  std::optional<double> variance_cutoff;

  std::vector<std::string> kept() const;
  std::vector<std::string> dropped() const;
};

// Drops SR = 0 entries. Among SR = 1 entries keeps the top
// ceil(quantile * n) by reward variance, plus anything tied with the last
// one kept. Given options.variance_cutoff, keeps SR = 1 entries at or above
// it instead, which makes a second pass over the survivors a no-op.
// Throws ErrorCode::kInconsistentRolloutCount when rollout counts differ.
FilterReport filter_prompts(std::span<const PromptPoolEntry> pool, const FilterOptions& options);

// The entries of `pool` that `report` kept.
std::vector<PromptPoolEntry> apply_filter(std::span<const PromptPoolEntry> pool,
                                          const FilterReport& report);

nlohmann::json to_json(const FilterDecision& d);

}  // namespace ares::rl

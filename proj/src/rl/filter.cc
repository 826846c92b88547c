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

#include "ares/rl/filter.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "ares/core/errors.h"

namespace ares::rl {

double PromptPoolEntry::sr() const {
  if (rollouts.empty()) return 0.0;
  const auto wins = std::count_if(rollouts.begin(), rollouts.end(),
                                  [](const RolloutOutcome& r) { return r.success; });
  return static_cast<double>(wins) / static_cast<double>(rollouts.size());
}

double PromptPoolEntry::reward_variance() const {
  if (rollouts.empty()) return 0.0;
  // Constant rewards are exactly 0, whatever the summation order rounds to.
  if (std::all_of(rollouts.begin(), rollouts.end(),
                  [&](const RolloutOutcome& r) { return r.reward == rollouts.front().reward; })) {
    return 0.0;
  }
  const double n = static_cast<double>(rollouts.size());
  double mean = 0.0;
  for (const auto& r : rollouts) mean += r.reward;
  mean /= n;
  double ss = 0.0;
  for (const auto& r : rollouts) ss += (r.reward - mean) * (r.reward - mean);
  return ss / n;
}

std::string_view to_string(FilterReason r) {
  switch (r) {
    case FilterReason::kZeroSuccess: return "zero_success";
    case FilterReason::kHighVariance: return "high_variance";
    case FilterReason::kLowVariance: return "low_variance";
    case FilterReason::kMixed: return "mixed_success";
    case FilterReason::kMixedDropped: return "mixed_success_dropped";
  }
  return "unknown";
}

std::vector<std::string> FilterReport::kept() const {
  std::vector<std::string> out;
  for (const auto& d : decisions) {
    if (d.kept) out.push_back(d.prompt_id);
  }
  return out;
}

std::vector<std::string> FilterReport::dropped() const {
  std::vector<std::string> out;
  for (const auto& d : decisions) {
    if (!d.kept) out.push_back(d.prompt_id);
  }
  return out;
}

FilterReport filter_prompts(std::span<const PromptPoolEntry> pool, const FilterOptions& options) {
  if (!(options.variance_quantile >= 0.0 && options.variance_quantile <= 1.0)) {
    throw Error(ErrorCode::kConfigInvalid, "variance_quantile must be in [0, 1]");
  }
  if (!pool.empty()) {
    const std::size_t n = pool.front().rollouts.size();
    for (const auto& e : pool) {
      if (e.rollouts.size() != n || n == 0) {
        throw Error(ErrorCode::kInconsistentRolloutCount,
                    "prompt '" + e.prompt_id + "' has " + std::to_string(e.rollouts.size()) +
                        " rollouts, expected " + std::to_string(n));
      }
    }
  }

  FilterReport report;
  std::vector<double> perfect;
  for (const auto& e : pool) {
    FilterDecision d{e.prompt_id, e.sr(), e.reward_variance(), false, FilterReason::kZeroSuccess};
    if (d.sr == 1.0) perfect.push_back(d.reward_variance);
    report.decisions.push_back(std::move(d));
  }

  double cutoff = std::numeric_limits<double>::infinity();
  if (options.variance_cutoff) {
    cutoff = *options.variance_cutoff;
  } else if (!perfect.empty()) {
    std::sort(perfect.begin(), perfect.end(), std::greater<>());
    // The epsilon keeps exact products such as 0.3 * 10 from rounding up.
    const auto keep = static_cast<std::size_t>(
        std::ceil(options.variance_quantile * static_cast<double>(perfect.size()) - 1e-9));
    if (keep > 0) cutoff = perfect[std::min(keep, perfect.size()) - 1];
  }

  for (auto& d : report.decisions) {
    if (d.sr == 0.0) {
      d.reason = FilterReason::kZeroSuccess;
    } else if (d.sr == 1.0) {
      d.kept = d.reward_variance >= cutoff;
      d.reason = d.kept ? FilterReason::kHighVariance : FilterReason::kLowVariance;
      if (d.kept && (!report.variance_cutoff || d.reward_variance < *report.variance_cutoff)) {
        report.variance_cutoff = d.reward_variance;
      }
    } else {
      d.kept = options.keep_mixed;
      d.reason = d.kept ? FilterReason::kMixed : FilterReason::kMixedDropped;
    }
  }
  if (options.variance_cutoff) report.variance_cutoff = options.variance_cutoff;
  return report;
}

std::vector<PromptPoolEntry> apply_filter(std::span<const PromptPoolEntry> pool,
                                          const FilterReport& report) {
  const auto ids = report.kept();
  const std::set<std::string> keep(ids.begin(), ids.end());
  std::vector<PromptPoolEntry> out;
  for (const auto& e : pool) {
    if (keep.count(e.prompt_id)) out.push_back(e);
  }
  return out;
}

nlohmann::json to_json(const FilterDecision& d) {
  return nlohmann::json{{"prompt_id", d.prompt_id},
                        {"sr", d.sr},
                        {"reward_variance", d.reward_variance},
                        {"kept", d.kept},
                        {"reason", std::string(to_string(d.reason))}};
}

}  // namespace ares::rl

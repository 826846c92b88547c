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
#include <span>
#include <string>

#include "ares/core/effort.h"
#include "ares/core/types.h"
#include "json.hpp"

namespace ares {

// Evaluation summary over a set of trajectories. Token totals are kept as
// integers; averages are derived from them.
struct MetricsReport {
  std::int64_t num_tasks = 0;
  std::int64_t successes = 0;
  std::int64_t total_steps = 0;
  double accuracy = 0.0;
  double avg_steps = 0.0;  // mean turns per task
  std::int64_t t_total = 0;  // agent tokens
  double t_task = 0.0;
  double t_step = 0.0;
  std::int64_t router_tokens = 0;
  PerEffort<std::int64_t> effort_histogram{};
  // Effort fractions per row; every nonempty row sums to 1.
  std::map<int, PerEffort<double>> per_step_index_histogram;
  std::map<std::string, PerEffort<double>> per_action_type_histogram;
};

// Throws ErrorCode::kEmptyInput on an empty list.
MetricsReport aggregate_metrics(std::span<const Trajectory> trajectories);

// accuracy - lambda * t_total. Only used to rank policies in reports.
double scalarized_objective(const MetricsReport& report, double lambda);

struct ReportDelta {
  double accuracy = 0.0;
  double avg_steps = 0.0;
  std::int64_t t_total = 0;
  double t_task = 0.0;
  double t_step = 0.0;
  std::int64_t router_tokens = 0;
};

// Element-wise candidate - baseline.
ReportDelta compare_reports(const MetricsReport& baseline,
                            const MetricsReport& candidate);

// Action-type label of an action: its first whitespace-delimited token.
std::string action_type_of(std::string_view action);

std::string render_table(const std::string& name, const MetricsReport& report);
std::string render_comparison(const std::string& baseline_name,
                              const MetricsReport& baseline,
                              const std::string& candidate_name,
                              const MetricsReport& candidate);

void to_json(nlohmann::json& j, const MetricsReport& r);
void from_json(const nlohmann::json& j, MetricsReport& r);
void to_json(nlohmann::json& j, const ReportDelta& d);

}  // namespace ares

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

#include "ares/core/metrics.h"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "ares/core/errors.h"
#include "ares/core/text.h"

namespace ares {
namespace {

template <typename Key>
std::map<Key, PerEffort<double>> normalize_rows(
    const std::map<Key, PerEffort<std::int64_t>>& counts) {
  std::map<Key, PerEffort<double>> out;
  for (const auto& [key, row] : counts) {
    const std::int64_t total = row[0] + row[1] + row[2];
    if (total == 0) continue;
    PerEffort<double> frac{};
    for (std::size_t i = 0; i < kNumEfforts; ++i) {
      frac[i] = static_cast<double>(row[i]) / static_cast<double>(total);
    }
    out.emplace(key, frac);
  }
  return out;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string signed_fixed(double v, int decimals) {
  std::string s = fixed(v, decimals);
  if (v > 0 || (v == 0 && s[0] != '-')) s.insert(s.begin(), '+');
  return s;
}

std::string pad(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s;
  return std::string(width - s.size(), ' ') + s;
}

std::string row_line(const std::string& name, const MetricsReport& r,
                     const ReportDelta* d) {
  std::ostringstream os;
  os << name;
  if (name.size() < 12) os << std::string(12 - name.size(), ' ');
  os << pad(fixed(100.0 * r.accuracy, 1), 8)
     << pad(d ? signed_fixed(100.0 * d->accuracy, 1) : "--", 9)
     << pad(fixed(r.avg_steps, 1), 7) << pad(std::to_string(r.t_total), 11)
     << pad(d ? signed_fixed(static_cast<double>(d->t_total), 0) : "--", 11)
     << pad(fixed(r.t_task, 0), 9)
     << pad(d ? signed_fixed(d->t_task, 0) : "--", 9)
     << pad(fixed(r.t_step, 0), 8)
     << pad(d ? signed_fixed(d->t_step, 0) : "--", 8)
     << pad(std::to_string(r.router_tokens), 10) << '\n';
  return os.str();
}

std::string header_line() {
  std::ostringstream os;
  os << "Method      " << pad("Acc(%)", 8) << pad("d_Acc", 9) << pad("S", 7)
     << pad("T_total", 11) << pad("d_token", 11) << pad("T_task", 9)
     << pad("d_token", 9) << pad("T_step", 8) << pad("d_token", 8)
     << pad("Router", 10) << '\n';
  return os.str();
}

nlohmann::json per_effort_json(const PerEffort<double>& row) {
  nlohmann::json j = nlohmann::json::object();
  for (EffortLevel e : kAllEfforts) j[std::string(to_string(e))] = row[index_of(e)];
  return j;
}

PerEffort<double> per_effort_from_json(const nlohmann::json& j) {
  PerEffort<double> row{};
  for (EffortLevel e : kAllEfforts) {
    row[index_of(e)] = j.value(std::string(to_string(e)), 0.0);
  }
  return row;
}

}  // namespace

std::string action_type_of(std::string_view action) {
  return std::string(text::first_token(action));
}

MetricsReport aggregate_metrics(std::span<const Trajectory> trajectories) {
  if (trajectories.empty()) {
    throw Error(ErrorCode::kEmptyInput, "aggregate_metrics needs at least one trajectory");
  }
  MetricsReport r;
  std::map<int, PerEffort<std::int64_t>> by_step;
  std::map<std::string, PerEffort<std::int64_t>> by_action;
  for (const auto& traj : trajectories) {
    ++r.num_tasks;
    if (traj.success) ++r.successes;
    for (const auto& turn : traj.turns) {
      ++r.total_steps;
      r.t_total += step_cost(turn);
      r.router_tokens += turn.router_usage.total();
      if (!turn.effort) continue;
      const std::size_t e = index_of(*turn.effort);
      ++r.effort_histogram[e];
      ++by_step[turn.index][e];
      ++by_action[action_type_of(turn.action)][e];
    }
  }
  const auto tasks = static_cast<double>(r.num_tasks);
  r.accuracy = static_cast<double>(r.successes) / tasks;
  r.avg_steps = static_cast<double>(r.total_steps) / tasks;
  r.t_task = static_cast<double>(r.t_total) / tasks;
  r.t_step = r.total_steps == 0
                 ? 0.0
                 : static_cast<double>(r.t_total) / static_cast<double>(r.total_steps);
  r.per_step_index_histogram = normalize_rows(by_step);
  r.per_action_type_histogram = normalize_rows(by_action);
  return r;
}

double scalarized_objective(const MetricsReport& report, double lambda) {
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("scalarized_objective: lambda must be >= 0");
  }
  return report.accuracy - lambda * static_cast<double>(report.t_total);
}

ReportDelta compare_reports(const MetricsReport& baseline,
                            const MetricsReport& candidate) {
  return ReportDelta{
      .accuracy = candidate.accuracy - baseline.accuracy,
      .avg_steps = candidate.avg_steps - baseline.avg_steps,
      .t_total = candidate.t_total - baseline.t_total,
      .t_task = candidate.t_task - baseline.t_task,
      .t_step = candidate.t_step - baseline.t_step,
      .router_tokens = candidate.router_tokens - baseline.router_tokens,
  };
}

std::string render_table(const std::string& name, const MetricsReport& report) {
  return header_line() + row_line(name, report, nullptr);
}

std::string render_comparison(const std::string& baseline_name,
                              const MetricsReport& baseline,
                              const std::string& candidate_name,
                              const MetricsReport& candidate) {
  const ReportDelta d = compare_reports(baseline, candidate);
  return header_line() + row_line(baseline_name, baseline, nullptr) +
         row_line(candidate_name, candidate, &d);
}

void to_json(nlohmann::json& j, const MetricsReport& r) {
  nlohmann::json hist = nlohmann::json::object();
  for (EffortLevel e : kAllEfforts) {
    hist[std::string(to_string(e))] = r.effort_histogram[index_of(e)];
  }
  nlohmann::json by_step = nlohmann::json::object();
  for (const auto& [step, row] : r.per_step_index_histogram) {
    by_step[std::to_string(step)] = per_effort_json(row);
  }
  nlohmann::json by_action = nlohmann::json::object();
  for (const auto& [action, row] : r.per_action_type_histogram) {
    by_action[action] = per_effort_json(row);
  }
  j = nlohmann::json{{"num_tasks", r.num_tasks},
                     {"successes", r.successes},
                     {"total_steps", r.total_steps},
                     {"accuracy", r.accuracy},
                     {"avg_steps", r.avg_steps},
                     {"t_total", r.t_total},
                     {"t_task", r.t_task},
                     {"t_step", r.t_step},
                     {"router_tokens", r.router_tokens},
                     {"effort_histogram", hist},
                     {"per_step_index_histogram", by_step},
                     {"per_action_type_histogram", by_action}};
}

void from_json(const nlohmann::json& j, MetricsReport& r) {
  r.num_tasks = j.at("num_tasks").get<std::int64_t>();
  r.successes = j.at("successes").get<std::int64_t>();
  r.total_steps = j.at("total_steps").get<std::int64_t>();
  r.accuracy = j.at("accuracy").get<double>();
  r.avg_steps = j.at("avg_steps").get<double>();
  r.t_total = j.at("t_total").get<std::int64_t>();
  r.t_task = j.at("t_task").get<double>();
  r.t_step = j.at("t_step").get<double>();
  r.router_tokens = j.value("router_tokens", std::int64_t{0});
  for (EffortLevel e : kAllEfforts) {
    r.effort_histogram[index_of(e)] =
        j.at("effort_histogram").value(std::string(to_string(e)), std::int64_t{0});
  }
  r.per_step_index_histogram.clear();
  for (const auto& [key, row] : j.at("per_step_index_histogram").items()) {
    r.per_step_index_histogram.emplace(std::stoi(key), per_effort_from_json(row));
  }
  r.per_action_type_histogram.clear();
  for (const auto& [key, row] : j.at("per_action_type_histogram").items()) {
    r.per_action_type_histogram.emplace(key, per_effort_from_json(row));
  }
}

void to_json(nlohmann::json& j, const ReportDelta& d) {
  j = nlohmann::json{{"accuracy", d.accuracy},     {"avg_steps", d.avg_steps},
                     {"t_total", d.t_total},       {"t_task", d.t_task},
                     {"t_step", d.t_step},         {"router_tokens", d.router_tokens}};
}

}  // namespace ares

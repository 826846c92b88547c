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

#include "ares/sim/sim.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>
#include <regex>
#include <stdexcept>

#include "ares/core/errors.h"
#include "ares/core/hash.h"
#include "ares/core/text.h"

namespace ares::sim {
namespace {

// Portable draws on top of mt19937_64; std distributions differ by vendor.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}
  double unit() { return to_unit_interval(engine_()); }
  int between(int lo, int hi) {  // inclusive
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::string format2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string make_gold_action(Stream& rng, int step, int length) {
  if (step == length) return "stop [done]";
  const int element = rng.between(100, 1999);
  switch (rng.between(0, 4)) {
    case 0: return "click [" + std::to_string(element) + "]";
    case 1: return "type [" + std::to_string(element) + "] [query " + std::to_string(step) + "] [1]";
    case 2: return "scroll [down]";
    case 3: return "go_back";
    default: return "branch [" + std::to_string(element) + "] [revise plan]";
  }
}

bool parse_double(std::string_view s, double& out) {
  const std::string copy(s);
  char* end = nullptr;
  out = std::strtod(copy.c_str(), &end);
  return end != copy.c_str() && *end == '\0';
}

}  // namespace

void validate(const SimTask& task) {
  const auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kValidation, "sim task '" + task.task_id + "': " + why);
  };
  if (task.difficulties.size() != task.gold_actions.size()) {
    fail("difficulties and gold actions differ in length");
  }
  if (task.length() < 1 || task.length() > kMaxTaskLength) fail("length outside [1, 20]");
  for (double d : task.difficulties) {
    if (!(d >= 0.0 && d <= 1.0)) fail("difficulty outside [0, 1]");
  }
  for (const auto& a : task.gold_actions) {
    if (text::collapse_whitespace(a) == kWrongAction || text::trim(a).empty()) {
      fail("gold action may not be empty or '" + std::string(kWrongAction) + "'");
    }
  }
}

void validate(const SimAgentProfile& profile) {
  for (std::size_t i = 0; i < kNumEfforts; ++i) {
    if (!(profile.capability[i] >= 0.0 && profile.capability[i] <= 1.0)) {
      throw Error(ErrorCode::kValidation, "sim capability outside [0, 1]");
    }
    if (profile.token_cost[i] < 0) throw Error(ErrorCode::kValidation, "negative sim token cost");
  }
  for (std::size_t i = 1; i < kNumEfforts; ++i) {
    if (!(profile.capability[i] > profile.capability[i - 1])) {
      throw Error(ErrorCode::kValidation, "sim capability must strictly increase with effort");
    }
    if (!(profile.token_cost[i] > profile.token_cost[i - 1])) {
      throw Error(ErrorCode::kValidation, "sim token cost must strictly increase with effort");
    }
  }
  if (profile.action_tokens < 0) throw Error(ErrorCode::kValidation, "negative action tokens");
}

DifficultyDistribution DifficultyDistribution::parse(std::string_view text) {
  const auto bad = [&] {
    return Error(ErrorCode::kConfigInvalid,
                 "difficulty distribution '" + std::string(text) +
                     "' (expected uniform:<lo>:<hi> or constant:<v>)");
  };
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  DifficultyDistribution d;
  if (parts.size() == 3 && parts[0] == "uniform") {
    d.kind = Kind::kUniform;
    if (!parse_double(parts[1], d.lo) || !parse_double(parts[2], d.hi)) throw bad();
  } else if (parts.size() == 2 && parts[0] == "constant") {
    d.kind = Kind::kConstant;
    if (!parse_double(parts[1], d.lo)) throw bad();
    d.hi = d.lo;
  } else {
    throw bad();
  }
  if (!(d.lo >= 0.0 && d.hi <= 1.0 && d.lo <= d.hi)) throw bad();
  return d;
}

std::string DifficultyDistribution::to_string() const {
  if (kind == Kind::kConstant) return "constant:" + format2(lo);
  return "uniform:" + format2(lo) + ":" + format2(hi);
}

std::vector<SimTask> generate_tasks(std::uint64_t seed, int count, LengthRange lengths,
                                    const DifficultyDistribution& difficulty) {
  if (count < 0 || lengths.min < 1 || lengths.max > kMaxTaskLength ||
      lengths.min > lengths.max) {
    throw std::invalid_argument("generate_tasks: invalid count or length range");
  }
  Stream rng(SeedMixer(seed).add("sim-tasks").value());
  std::vector<SimTask> tasks;
  tasks.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    SimTask task;
    char id[32];
    std::snprintf(id, sizeof(id), "task-%04d", i + 1);
    task.task_id = id;
    const int length = rng.between(lengths.min, lengths.max);
    task.goal = "Complete synthetic " + std::to_string(length) + "-step task " + task.task_id + ".";
    for (int step = 1; step <= length; ++step) {
      double d = difficulty.lo;
      if (difficulty.kind == DifficultyDistribution::Kind::kUniform) {
        d = difficulty.lo + (difficulty.hi - difficulty.lo) * rng.unit();
      }
      task.difficulties.push_back(std::clamp(round2(d), 0.0, 1.0));
      task.gold_actions.push_back(make_gold_action(rng, step, length));
    }
    tasks.push_back(std::move(task));
  }
  return tasks;
}

std::string sim_observation(const SimTask& task, int step) {
  return "[sim " + task.task_id + " step " + std::to_string(step) + "/" +
         std::to_string(task.length()) + "] page complexity " +
         format2(task.difficulties.at(static_cast<std::size_t>(step - 1)));
}

double success_probability(const SimTask& task, int step, EffortLevel effort,
                           const SimAgentProfile& profile) {
  const double d = task.difficulties.at(static_cast<std::size_t>(step - 1));
  return std::clamp(profile.capability_of(effort) - d + 0.5, 0.0, 1.0);
}

gateway::CompletionResult sim_agent_complete(const SimTask& task, int step, EffortLevel effort,
                                             const SimAgentProfile& profile,
                                             std::uint64_t trial) {
  if (step < 1 || step > task.length()) {
    throw Error(ErrorCode::kStepOutOfRange, "step " + std::to_string(step) + " of task '" +
                                                task.task_id + "' with " +
                                                std::to_string(task.length()) + " steps");
  }
  const auto i = static_cast<std::size_t>(step - 1);
  bool correct = false;
  if (profile.mode == SimMode::kDeterministic) {
    correct = profile.capability_of(effort) >= task.difficulties[i];
  } else {
    const double u = to_unit_interval(SeedMixer(profile.seed)
                                          .add(task.task_id)
                                          .add(static_cast<std::uint64_t>(step))
                                          .add(static_cast<std::uint64_t>(index_of(effort)))
                                          .add(trial)
                                          .value());
    correct = u < success_probability(task, step, effort, profile);
  }
  gateway::CompletionResult r;
  r.reasoning = "Assessed step " + std::to_string(step) + " of " + std::to_string(task.length()) +
                " at " + std::string(to_string(effort)) + " effort.";
  r.action = correct ? task.gold_actions[i] : std::string(kWrongAction);
  r.usage = TokenUsage{profile.token_cost[index_of(effort)], profile.action_tokens};
  r.raw = "REASON: " + r.reasoning + "\nACTION: " + r.action;
  return r;
}

std::vector<std::optional<EffortLevel>> oracle_min_effort(const SimTask& task,
                                                          const SimAgentProfile& profile) {
  if (profile.mode != SimMode::kDeterministic) {
    throw std::invalid_argument("oracle_min_effort requires a deterministic profile");
  }
  std::vector<std::optional<EffortLevel>> out;
  out.reserve(task.difficulties.size());
  for (double d : task.difficulties) {
    std::optional<EffortLevel> least;
    for (EffortLevel e : kAllEfforts) {
      if (profile.capability_of(e) >= d) {
        least = e;
        break;
      }
    }
    out.push_back(least);
  }
  return out;
}

Assignment oracle_best_assignment(const SimTask& task, const SimAgentProfile& profile,
                                  const PerEffort<double>& costs) {
  if (profile.mode != SimMode::kDeterministic) {
    throw std::invalid_argument("oracle_best_assignment requires a deterministic profile");
  }
  const int length = task.length();
  if (length > kMaxExhaustiveLength) {
    throw std::invalid_argument("oracle_best_assignment: T > 12");
  }
  std::uint64_t total = 1;
  for (int i = 0; i < length; ++i) total *= kNumEfforts;

  std::optional<Assignment> best;
  std::vector<EffortLevel> current(static_cast<std::size_t>(length));
  // Code c enumerates assignments in lexicographic order with step 1 as the
  // most significant base-3 digit.
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (int i = length - 1; i >= 0; --i) {
      current[static_cast<std::size_t>(i)] = kAllEfforts[rest % kNumEfforts];
      rest /= kNumEfforts;
    }
    bool ok = true;
    double cost = 0.0;
    for (int i = 0; i < length && ok; ++i) {
      const EffortLevel e = current[static_cast<std::size_t>(i)];
      ok = profile.capability_of(e) >= task.difficulties[static_cast<std::size_t>(i)];
      cost += costs[index_of(e)];
    }
    if (!ok) continue;
    if (!best || cost < best->total_cost) best = Assignment{current, cost};
  }
  if (!best) {
    throw Error(ErrorCode::kNoSuccessfulAssignment,
                "task '" + task.task_id + "' has no fully successful assignment");
  }
  return *best;
}

Trajectory to_gold_trajectory(const SimTask& task) {
  Trajectory t;
  t.task_id = task.task_id;
  t.goal = task.goal;
  t.domain = ActionDomain::kWeb;
  t.success = true;
  t.terminated_by = TerminatedBy::kCompleted;
  for (int step = 1; step <= task.length(); ++step) {
    Turn turn;
    turn.index = step;
    turn.observation = sim_observation(task, step);
    turn.effort = EffortLevel::kHigh;
    turn.action = task.gold_actions[static_cast<std::size_t>(step - 1)];
    t.turns.push_back(std::move(turn));
  }
  return t;
}

nlohmann::json to_task_row(const SimTask& task) {
  nlohmann::json row = to_gold_trajectory(task);
  row["difficulties"] = task.difficulties;
  return row;
}

SimTask from_task_row(const nlohmann::json& row) {
  SimTask task;
  task.task_id = row.at("task_id").get<std::string>();
  task.goal = row.value("goal", std::string{});
  task.difficulties = row.at("difficulties").get<std::vector<double>>();
  for (const auto& turn : row.at("turns")) {
    task.gold_actions.push_back(turn.at("action").get<std::string>());
  }
  validate(task);
  return task;
}

std::string SimEnvironment::reset() {
  step_ = 1;
  return sim_observation(task_, step_);
}

routing::StepOutcome SimEnvironment::step(const std::string& action) {
  if (step_ > task_.length()) throw std::logic_error("SimEnvironment: episode already over");
  const auto& gold = task_.gold_actions[static_cast<std::size_t>(step_ - 1)];
  if (text::collapse_whitespace(action) != text::collapse_whitespace(gold)) {
    step_ = task_.length() + 1;
    return routing::StepOutcome{"[sim " + task_.task_id + "] wrong action, episode failed", true,
                                false};
  }
  ++step_;
  if (step_ > task_.length()) {
    return routing::StepOutcome{"[sim " + task_.task_id + "] task complete", true, true};
  }
  return routing::StepOutcome{sim_observation(task_, step_), false, false};
}

SimAgentEndpoint::SimAgentEndpoint(std::vector<SimTask> tasks, SimAgentProfile profile)
    : profile_(profile) {
  validate(profile_);
  for (auto& t : tasks) {
    std::string id = t.task_id;
    tasks_.emplace(std::move(id), std::move(t));
  }
}

gateway::CompletionResult SimAgentEndpoint::complete(const gateway::CompletionRequest& request) {
  static const std::regex kHeader(R"(^\[sim (\S+) step (\d+)/(\d+)\])");
  std::smatch m;
  if (!std::regex_search(request.observation, m, kHeader)) {
    throw Error(ErrorCode::kValidation, "sim agent cannot read observation header");
  }
  auto it = tasks_.find(m[1].str());
  if (it == tasks_.end()) {
    throw Error(ErrorCode::kValidation, "sim agent has no task '" + m[1].str() + "'");
  }
  if (!request.effort) throw std::invalid_argument("sim agent request without effort");
  return sim_agent_complete(it->second, std::stoi(m[2].str()), *request.effort, profile_,
                            request.seed.value_or(0));
}

routing::TaskSpec task_spec_of(const SimTask& task) {
  return routing::TaskSpec{task.task_id, task.goal, ActionDomain::kWeb};
}

}  // namespace ares::sim

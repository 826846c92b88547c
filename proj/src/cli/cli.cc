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

#include "ares/cli/cli.h"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "ares/cli/config.h"
#include "ares/core/errors.h"
#include "ares/core/jsonl.h"
#include "ares/core/metrics.h"
#include "ares/core/work_pool.h"
#include "ares/gateway/http.h"
#include "ares/gateway/stubs.h"
#include "ares/pipeline/annotate.h"
#include "ares/pipeline/reference.h"
#include "ares/pipeline/sft.h"
#include "ares/rl/export.h"
#include "ares/rl/filter.h"
#include "ares/rl/reward.h"
#include "ares/rl/rollout.h"
#include "ares/sim/sim.h"

namespace ares::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GlobalFlags {
  std::string config;
  std::optional<std::string> policy;
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
  std::string out = "run";
};

struct StageFlags {
  std::string import_path;
  std::optional<int> samples;
  std::string rollouts = files::kRollouts;
  std::string baseline = "high";
  std::string candidate;
  double lambda = 0.0;
};

class Stage {
 public:
  Stage(std::string name, RunConfig config, fs::path out_dir, std::ostream& out)
      : name_(std::move(name)),
        config_(std::move(config)),
        dir_(std::move(out_dir)),
        out_(out),
        pool_(static_cast<std::size_t>(config_.jobs)),
        prompts_(gateway::PromptRegistry::builtin()) {
    if (!config_.paths.prompts_dir.empty()) prompts_.load_dir(config_.paths.prompts_dir);
  }

  const RunConfig& config() const { return config_; }
  const WorkPool& pool() const { return pool_; }
  const gateway::PromptRegistry& prompts() const { return prompts_; }
  const fs::path& dir() const { return dir_; }
  fs::path path(const std::string& file) const { return dir_ / file; }

  Manifest manifest(json params = json::object()) const {
    Manifest m;
    m.stage = name_;
    m.config_hash = config_hash(config_);
    m.seed = config_.seed;
    m.extra = json{{"config", to_json(config_)}};
    for (auto& [k, v] : params.items()) m.extra[k] = v;
    return m;
  }

  void write(const std::string& file, const std::vector<json>& rows, json params = json::object()) const {
    write_jsonl(path(file), manifest(std::move(params)), rows);
  }

  void summary(const std::string& line) const { out_ << name_ << ": " << line << '\n'; }

  std::vector<sim::SimTask> tasks() const {
    std::vector<sim::SimTask> out;
    for (const auto& row : read_jsonl(path(files::kTasks)).rows) out.push_back(sim::from_task_row(row));
    return out;
  }

  std::vector<pipeline::ReferenceTrajectory> references() const {
    std::vector<pipeline::ReferenceTrajectory> out;
    for (const auto& row : read_jsonl(path(files::kReferences)).rows) {
      out.push_back(pipeline::reference_from_row(row));
    }
    return out;
  }

  std::shared_ptr<gateway::ChatClient> client(const gateway::EndpointConfig& ep) const {
    return std::make_shared<gateway::ChatClient>(ep, gateway::make_http_transport(ep));
  }

  std::shared_ptr<gateway::AgentEndpoint> agent(const std::vector<sim::SimTask>& tasks) const {
    const auto ep = endpoint(config_, config_.roles.agent);
    if (ep.kind == "sim") {
      sim::SimAgentProfile profile = config_.sim.profile;
      profile.seed = config_.seed;
      return std::make_shared<sim::SimAgentEndpoint>(tasks, profile);
    }
    if (ep.kind == "http") return std::make_shared<gateway::HttpAgentEndpoint>(*client(ep), prompts_);
    throw Error(ErrorCode::kConfigInvalid, "endpoint '" + ep.name + "' cannot serve as the agent");
  }

  std::shared_ptr<gateway::JudgeEndpoint> judge() const {
    const auto ep = endpoint(config_, config_.roles.judge);
    if (ep.kind == "stub") return std::make_shared<gateway::StubJudge>();
    if (ep.kind == "http") return std::make_shared<gateway::HttpJudgeEndpoint>(*client(ep), prompts_);
    throw Error(ErrorCode::kConfigInvalid, "endpoint '" + ep.name + "' cannot serve as the judge");
  }

  std::shared_ptr<gateway::TeacherEndpoint> teacher() const {
    const auto ep = endpoint(config_, config_.roles.teacher);
    if (ep.kind == "stub") return std::make_shared<gateway::StubTeacher>();
    if (ep.kind == "http") return std::make_shared<gateway::HttpTeacherEndpoint>(*client(ep), prompts_);
    throw Error(ErrorCode::kConfigInvalid, "endpoint '" + ep.name + "' cannot serve as the teacher");
  }

  std::unique_ptr<routing::Policy> policy(const std::string& spec_text) const {
    const auto spec = routing::parse_policy_spec(spec_text);
    routing::RouterLookup lookup = [this](const std::string& name)
        -> std::shared_ptr<gateway::RouterEndpoint> {
      const auto ep = endpoint(config_, name);
      if (ep.kind == "stub") return std::make_shared<gateway::ScriptedRouter>(ep.stub_replies);
      if (ep.kind == "http") return std::make_shared<gateway::HttpRouterEndpoint>(*client(ep), prompts_);
      throw Error(ErrorCode::kConfigInvalid, "endpoint '" + name + "' cannot serve as a router");
    };
    return routing::make_policy(spec, lookup, config_.seed);
  }

 private:
  std::string name_;
  RunConfig config_;
  fs::path dir_;
  std::ostream& out_;
  WorkPool pool_;
  gateway::PromptRegistry prompts_;
};

std::string rel(const Stage& s, const char* file) { return s.path(file).string(); }

// ---- stages ---------------------------------------------------------------

void run_simgen(const Stage& s) {
  const auto& c = s.config().sim;
  const auto tasks = sim::generate_tasks(s.config().seed, c.count, c.lengths, c.difficulty);
  std::vector<json> rows;
  for (const auto& t : tasks) rows.push_back(sim::to_task_row(t));
  s.write(files::kTasks, rows,
          json{{"count", c.count},
               {"length_min", c.lengths.min},
               {"length_max", c.lengths.max},
               {"difficulty", c.difficulty.to_string()}});
  s.summary(std::to_string(tasks.size()) + " tasks -> " + rel(s, files::kTasks));
}

void run_collect(const Stage& s, const StageFlags& f) {
  const auto& a = s.config().annotation;
  std::string import_path = f.import_path.empty() ? s.config().paths.import : f.import_path;
  std::vector<json> rows;
  if (!import_path.empty()) {
    for (const auto& row : read_jsonl(import_path).rows) {
      rows.push_back(pipeline::to_row(pipeline::reference_from_row(row)));
    }
    s.write(files::kReferences, rows, json{{"imported", true}});
    s.summary(std::to_string(rows.size()) + " imported references -> " + rel(s, files::kReferences));
    return;
  }
  const auto tasks = s.tasks();
  const auto agent = s.agent(tasks);
  pipeline::CollectOptions opts{a.samples_n, a.max_steps, s.config().seed};
  const auto refs = s.pool().map(tasks.size(), [&](std::size_t i)
                                     -> std::optional<pipeline::ReferenceTrajectory> {
    const sim::SimTask& task = tasks[i];
    try {
      return pipeline::collect_reference(
          sim::task_spec_of(task), [&] { return std::make_unique<sim::SimEnvironment>(task); },
          *agent, opts);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNoSuccess) return std::nullopt;
      throw;
    }
  });
  json excluded = json::array();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (refs[i]) {
      rows.push_back(pipeline::to_row(*refs[i]));
    } else {
      excluded.push_back(tasks[i].task_id);
    }
  }
  s.write(files::kReferences, rows, json{{"samples_n", a.samples_n}, {"excluded", excluded}});
  s.summary(std::to_string(rows.size()) + " references from " + std::to_string(tasks.size()) +
            " tasks, " + std::to_string(excluded.size()) + " without success -> " +
            rel(s, files::kReferences));
}

int run_annotate(const Stage& s, std::ostream& err) {
  const auto refs = s.references();
  std::vector<sim::SimTask> tasks;
  if (endpoint(s.config(), s.config().roles.agent).kind == "sim") tasks = s.tasks();
  const auto agent = s.agent(tasks);
  const auto judge = s.judge();
  std::vector<json> rows;
  PerEffort<int> counts{};
  int discarded = 0;
  int fallback = 0;
  int failed = 0;
  for (const auto& ref : refs) {
    try {
      for (const auto& label : pipeline::annotate_trajectory(ref, s.config().annotation, *agent,
                                                             judge.get(), s.pool())) {
        if (label.label) ++counts[index_of(*label.label)];
        discarded += label.discarded;
        fallback += label.via_fallback;
        rows.push_back(label);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kStepAnnotationFailed) throw;
      ++failed;
      err << "annotate: " << e.what() << '\n';
    }
  }
  const auto& a = s.config().annotation;
  s.write(files::kLabels, rows,
          json{{"trials_k", a.trials_k},
               {"threshold_m", a.threshold_m},
               {"fallback", std::string(pipeline::to_string(a.fallback))}});
  s.summary(std::to_string(rows.size()) + " steps (low " + std::to_string(counts[0]) +
            ", medium " + std::to_string(counts[1]) + ", high " + std::to_string(counts[2]) +
            ", fallback " + std::to_string(fallback) + ", discarded " + std::to_string(discarded) +
            ", failed trajectories " + std::to_string(failed) + ") -> " + rel(s, files::kLabels));
  return failed == 0 ? kExitOk : kExitStageError;
}

std::map<std::string, pipeline::ReferenceTrajectory> reference_index(const Stage& s) {
  std::map<std::string, pipeline::ReferenceTrajectory> out;
  for (auto& ref : s.references()) {
    std::string id = ref.trajectory.task_id;
    out.emplace(std::move(id), std::move(ref));
  }
  return out;
}

const pipeline::ReferenceTrajectory& find_reference(
    const std::map<std::string, pipeline::ReferenceTrajectory>& refs, const std::string& id) {
  auto it = refs.find(id);
  if (it == refs.end()) throw Error(ErrorCode::kMissingInput, "no reference for task '" + id + "'");
  return it->second;
}

void run_rationalize(const Stage& s) {
  const auto refs = reference_index(s);
  std::vector<pipeline::StepLabel> labels;
  for (const auto& row : read_jsonl(s.path(files::kLabels)).rows) {
    auto label = row.get<pipeline::StepLabel>();
    if (label.label) labels.push_back(std::move(label));
  }
  const auto teacher = s.teacher();
  const auto records = s.pool().map(labels.size(), [&](std::size_t i) {
    return pipeline::rationalize_step(find_reference(refs, labels[i].task_id), labels[i], *teacher);
  });
  std::vector<json> rows;
  for (const auto& r : records) rows.push_back(pipeline::to_row(r));
  s.write(files::kRationales, rows);
  s.summary(std::to_string(rows.size()) + " rationales -> " + rel(s, files::kRationales));
}

void run_emit_sft(const Stage& s) {
  const auto refs = reference_index(s);
  std::vector<pipeline::SftExample> examples;
  for (const auto& row : read_jsonl(s.path(files::kRationales)).rows) {
    const auto r = pipeline::rationale_from_row(row);
    examples.push_back(pipeline::sft_example_for(find_reference(refs, r.task_id), r, s.prompts()));
  }
  const auto stats = pipeline::emit_dataset(examples, s.path(files::kSft), s.manifest());
  s.summary(std::to_string(stats.total) + " examples (low " + std::to_string(stats.per_label[0]) +
            ", medium " + std::to_string(stats.per_label[1]) + ", high " +
            std::to_string(stats.per_label[2]) + ") -> " + rel(s, files::kSft));
}

// Shorthands: low, medium, high, random (seeded by the run seed) and
// oracle (the run's labels file). Anything else must be a full spec.
std::string resolve_policy(const std::string& name, std::uint64_t seed, const fs::path& dir) {
  if (name == "low" || name == "medium" || name == "high") return "fixed:" + name;
  if (name == "random") return "random:" + std::to_string(seed);
  if (name == "oracle") return "oracle:" + (dir / files::kLabels).string();
  return name;
}

std::string resolve_policy(const Stage& s, const std::string& name) {
  return resolve_policy(name, s.config().seed, s.dir());
}

struct RolloutRow {
  std::string prompt_id;
  int group_index = 0;
  std::optional<rl::RolloutRecord> record;
  std::string infrastructure_error;
};

// Tasks an oracle spec can route end to end: every step labeled. Unset for
// other policies, which cover every task.
std::optional<std::set<std::string>> oracle_coverage(const Stage& s, const std::string& spec_text) {
  const auto spec = routing::parse_policy_spec(spec_text);
  const auto* oracle = std::get_if<routing::OracleSpec>(&spec);
  if (!oracle) return std::nullopt;
  const auto labels = routing::LabelTable::from_jsonl(oracle->labels_path);
  std::set<std::string> covered;
  for (const auto& task : s.tasks()) {
    bool all = true;
    for (int step = 1; step <= task.length() && all; ++step) all = labels.find(task.task_id, step).has_value();
    if (all) covered.insert(task.task_id);
  }
  return covered;
}

std::vector<RolloutRow> rollout_tasks(const Stage& s, const std::string& policy_spec, int samples,
                                      const std::optional<std::set<std::string>>& only = std::nullopt) {
  std::vector<sim::SimTask> tasks;
  for (auto& t : s.tasks()) {
    if (!only || only->count(t.task_id)) tasks.push_back(std::move(t));
  }
  const auto agent = s.agent(tasks);
  const auto policy = s.policy(policy_spec);
  const auto n = static_cast<std::size_t>(samples);
  return s.pool().map(tasks.size() * n, [&](std::size_t i) {
    const sim::SimTask& task = tasks[i / n];
    RolloutRow row;
    row.prompt_id = task.task_id;
    row.group_index = static_cast<int>(i % n);
    sim::SimEnvironment env(task);
    routing::EpisodeOptions opts;
    opts.max_steps = s.config().rl.max_steps;
    opts.sample = static_cast<std::uint64_t>(row.group_index);
    opts.seed = s.config().seed;
    try {
      row.record = rl::rollout(sim::task_spec_of(task), env, *policy, *agent, opts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInfrastructure) throw;
      row.infrastructure_error = e.what();
    }
    return row;
  });
}

void run_rollout(const Stage& s, const StageFlags& f) {
  const std::string spec = s.config().policy;
  const int samples = f.samples.value_or(s.config().rl.trainer.group_size);
  if (samples < 1) throw Error(ErrorCode::kConfigInvalid, "--samples must be >= 1");
  const auto coverage = oracle_coverage(s, spec);
  const auto results = rollout_tasks(s, spec, samples, coverage);
  std::vector<json> rows;
  int infra = 0;
  int successes = 0;
  for (const auto& r : results) {
    json row{{"prompt_id", r.prompt_id}, {"group_index", r.group_index}};
    if (r.record) {
      row["rollout"] = *r.record;
      successes += r.record->trajectory.success;
    } else {
      row["infrastructure_error"] = r.infrastructure_error;
      ++infra;
    }
    rows.push_back(std::move(row));
  }
  s.write(f.rollouts, rows, json{{"policy", spec}, {"samples", samples}, {"oracle_restricted", coverage.has_value()}});
  s.summary(std::to_string(rows.size()) + " rollouts with " + spec + ", " +
            std::to_string(successes) + " successful, " + std::to_string(infra) +
            " infrastructure failures -> " + s.path(f.rollouts).string());
}

struct LoadedRollout {
  std::string prompt_id;
  int group_index = 0;
  rl::RolloutRecord record;
};

std::vector<LoadedRollout> load_rollouts(const fs::path& path, int* infrastructure) {
  std::vector<LoadedRollout> out;
  for (const auto& row : read_jsonl(path).rows) {
    if (row.contains("infrastructure_error")) {
      if (infrastructure) ++*infrastructure;
      continue;
    }
    out.push_back(LoadedRollout{row.at("prompt_id").get<std::string>(),
                                row.at("group_index").get<int>(),
                                row.at("rollout").get<rl::RolloutRecord>()});
  }
  return out;
}

void run_reward(const Stage& s, const StageFlags& f) {
  int infra = 0;
  const auto rollouts = load_rollouts(s.path(f.rollouts), &infra);
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < rollouts.size(); ++i) {
    auto [it, fresh] = groups.try_emplace(rollouts[i].prompt_id);
    if (fresh) order.push_back(rollouts[i].prompt_id);
    it->second.push_back(i);
  }
  std::vector<rl::RewardBreakdown> rewards(rollouts.size());
  std::vector<double> advantages(rollouts.size(), 0.0);
  for (std::size_t i = 0; i < rollouts.size(); ++i) {
    rewards[i] = rl::compute_reward(rollouts[i].record, s.config().reward);
  }
  for (const auto& id : order) {
    const auto& members = groups[id];
    std::vector<double> totals;
    for (std::size_t i : members) totals.push_back(rewards[i].total);
    const auto adv = rl::group_advantages(totals);
    for (std::size_t k = 0; k < members.size(); ++k) advantages[members[k]] = adv[k];
  }
  std::vector<json> rows;
  std::vector<rl::RlRecord> records;
  for (std::size_t i = 0; i < rollouts.size(); ++i) {
    const auto& r = rollouts[i];
    rows.push_back(json{{"prompt_id", r.prompt_id},
                        {"group_index", r.group_index},
                        {"success", r.record.trajectory.success},
                        {"terminated_by", std::string(to_string(r.record.trajectory.terminated_by))},
                        {"reward", rewards[i]},
                        {"advantage", advantages[i]}});
    records.push_back(rl::make_rl_record(r.prompt_id, r.group_index, r.record, rewards[i], advantages[i]));
  }
  s.write(files::kRewards, rows, json{{"infrastructure_failures", infra}});
  rl::export_rl_records(records, s.path(files::kRlRecords), s.manifest(), s.config().rl.trainer);
  s.summary(std::to_string(rows.size()) + " rewards over " + std::to_string(order.size()) +
            " groups -> " + rel(s, files::kRewards) + ", " + rel(s, files::kRlRecords));
}

void run_filter(const Stage& s) {
  std::vector<rl::PromptPoolEntry> pool;
  std::map<std::string, std::size_t> index;
  for (const auto& row : read_jsonl(s.path(files::kRewards)).rows) {
    const auto id = row.at("prompt_id").get<std::string>();
    auto [it, fresh] = index.try_emplace(id, pool.size());
    if (fresh) pool.push_back(rl::PromptPoolEntry{id, {}});
    pool[it->second].rollouts.push_back(
        rl::RolloutOutcome{row.at("success").get<bool>(), row.at("reward").at("total").get<double>()});
  }
  const auto report = rl::filter_prompts(pool, s.config().rl.filter);
  std::vector<json> rows;
  for (const auto& d : report.decisions) rows.push_back(rl::to_json(d));
  const auto kept = report.kept();
  s.write(files::kFilter, rows,
          json{{"variance_quantile", s.config().rl.filter.variance_quantile},
               {"variance_cutoff", report.variance_cutoff ? json(*report.variance_cutoff) : json(nullptr)},
               {"kept", kept}});
  s.summary(std::to_string(kept.size()) + " of " + std::to_string(pool.size()) +
            " prompts kept -> " + rel(s, files::kFilter));
}

// A report side naming a rollouts file rather than a policy.
bool is_rollouts_file(const std::string& name) {
  return name.ends_with(".jsonl") && !name.starts_with("oracle:") && fs::exists(name);
}

std::vector<Trajectory> trajectories_for(const Stage& s, const std::string& name,
                                         const std::optional<std::set<std::string>>& only) {
  std::vector<Trajectory> out;
  if (is_rollouts_file(name)) {
    for (auto& r : load_rollouts(name, nullptr)) {
      if (r.group_index == 0 && (!only || only->count(r.prompt_id))) out.push_back(std::move(r.record.trajectory));
    }
    return out;
  }
  for (auto& r : rollout_tasks(s, resolve_policy(s, name), 1, only)) {
    if (r.record) out.push_back(std::move(r.record->trajectory));
  }
  return out;
}

void run_report(const Stage& s, const StageFlags& flags) {
  StageFlags f = flags;
  // Without --candidate the configured policy is compared to the baseline.
  if (f.candidate.empty() && s.config().policy != resolve_policy(s, f.baseline)) {
    f.candidate = s.config().policy;
  }
  // Both sides run on the same tasks: an oracle side narrows the set to the
  // tasks its labels cover, a rollouts file to the tasks it holds.
  std::optional<std::set<std::string>> only;
  for (const auto* side : {&f.baseline, &f.candidate}) {
    if (side->empty()) continue;
    std::optional<std::set<std::string>> cov;
    if (is_rollouts_file(*side)) {
      cov.emplace();
      for (const auto& r : load_rollouts(*side, nullptr)) cov->insert(r.prompt_id);
    } else {
      cov = oracle_coverage(s, resolve_policy(s, *side));
    }
    if (cov) {
      if (only) {
        std::set<std::string> both;
        for (const auto& id : *cov) {
          if (only->count(id)) both.insert(id);
        }
        only = std::move(both);
      } else {
        only = std::move(cov);
      }
    }
  }
  const auto base = aggregate_metrics(trajectories_for(s, f.baseline, only));
  json j{{"baseline", {{"name", f.baseline}, {"metrics", base},
                       {"objective", scalarized_objective(base, f.lambda)}}},
         {"lambda", f.lambda},
         {"tasks_restricted", only.has_value()}};
  std::string text;
  if (f.candidate.empty()) {
    text = render_table(f.baseline, base);
  } else {
    const auto cand = aggregate_metrics(trajectories_for(s, f.candidate, only));
    text = render_comparison(f.baseline, base, f.candidate, cand);
    j["candidate"] = {{"name", f.candidate}, {"metrics", cand},
                      {"objective", scalarized_objective(cand, f.lambda)}};
    j["delta"] = compare_reports(base, cand);
  }
  write_text(s.path(files::kReportText), text);
  write_text(s.path(files::kReportJson), j.dump(2) + "\n");
  s.summary("-> " + rel(s, files::kReportText) + ", " + rel(s, files::kReportJson) + "\n" + text);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigInvalid: return kExitConfig;
    case ErrorCode::kMissingInput: return kExitMissingInput;
    default: return kExitStageError;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ares: per-step reasoning-effort routing, labeling and RL reward toolkit", "ares"};
  app.require_subcommand(1);
  GlobalFlags g;
  StageFlags f;
  app.add_option("--config", g.config, "Config file (key = value)");
  app.add_option("--policy", g.policy, "Routing policy: fixed:<e>, random:<seed>, llm:<endpoint>, oracle:<labels>");
  app.add_option("--jobs", g.jobs, "Worker threads (default: logical CPUs)");
  app.add_option("--seed", g.seed, "Global seed");
  app.add_option("--out", g.out, "Run directory")->capture_default_str();

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simgen", "Generate simulated tasks"},
      {"collect", "Phase 1: collect reference trajectories"},
      {"annotate", "Phase 2: per-step minimum-effort labels"},
      {"rationalize", "Phase 3: teacher rationales for labeled steps"},
      {"emit-sft", "Write the router SFT dataset"},
      {"rollout", "Router-in-the-loop rollouts"},
      {"reward", "Rewards, group advantages and RL records"},
      {"filter", "Prompt-pool filter"},
      {"report", "Metrics table, optionally against a baseline"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    subs[name] = app.add_subcommand(name, help);
    subs[name]->fallthrough();
  }
  subs["collect"]->add_option("--import", f.import_path, "Import external trajectories instead of sampling");
  subs["rollout"]->add_option("--samples", f.samples, "Rollouts per task (default rl.group_size)");
  subs["rollout"]->add_option("--name", f.rollouts, "Output file name")->capture_default_str();
  subs["reward"]->add_option("--rollouts", f.rollouts, "Rollout file name")->capture_default_str();
  subs["report"]->add_option("--baseline", f.baseline, "Policy shorthand, spec or rollouts file")->capture_default_str();
  subs["report"]->add_option("--candidate", f.candidate, "Policy shorthand, spec or rollouts file (default: --policy)");
  subs["report"]->add_option("--lambda", f.lambda, "Token weight of the scalarized objective");

  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.empty() || a[0] == '-') {
      if (a.find('=') == std::string::npos && a != "-h" && a != "--help") ++i;  // skip its value
      continue;
    }
    if (!subs.count(a)) {
      err << "ares: unknown subcommand '" << a << "'\n" << app.help();
      return kExitUsage;
    }
    break;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ares: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  std::string stage_name;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) stage_name = name;
  }
  try {
    RunConfig config = g.config.empty() ? RunConfig{} : load_config(g.config);
    if (g.seed) config.seed = *g.seed;
    if (g.jobs) config.jobs = *g.jobs;
    if (g.policy) config.policy = *g.policy;
    config.policy = resolve_policy(config.policy, config.seed, g.out);
    validate(config);
    Stage s(stage_name, std::move(config), g.out, out);
    if (stage_name == "simgen") run_simgen(s);
    else if (stage_name == "collect") run_collect(s, f);
    else if (stage_name == "annotate") return run_annotate(s, err);
    else if (stage_name == "rationalize") run_rationalize(s);
    else if (stage_name == "emit-sft") run_emit_sft(s);
    else if (stage_name == "rollout") run_rollout(s, f);
    else if (stage_name == "reward") run_reward(s, f);
    else if (stage_name == "filter") run_filter(s);
    else if (stage_name == "report") run_report(s, f);
    return kExitOk;
  } catch (const Error& e) {
    err << "ares " << stage_name << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "ares " << stage_name << ": " << e.what() << '\n';
    return kExitStageError;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace ares::cli

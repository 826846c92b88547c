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

#include "ares/routing/policy.h"

#include <charconv>

#include "ares/core/errors.h"
#include "ares/core/hash.h"
#include "ares/core/jsonl.h"
#include "ares/routing/router_output.h"

namespace ares::routing {

PolicySpec parse_policy_spec(std::string_view text) {
  const auto colon = text.find(':');
  const auto bad = [&](const std::string& why) {
    return Error(ErrorCode::kConfigInvalid,
                 "policy '" + std::string(text) + "': " + why +
                     " (expected fixed:<level>|random:<seed>|llm:<endpoint>|oracle:<labels-file>)");
  };
  if (colon == std::string_view::npos) throw bad("missing ':'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view arg = text.substr(colon + 1);
  if (arg.empty()) throw bad("missing argument");
  if (kind == "fixed") {
    auto level = try_parse_effort(arg);
    if (!level) throw bad("unknown effort level");
    return FixedSpec{*level};
  }
  if (kind == "random") {
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), seed);
    if (ec != std::errc{} || ptr != arg.data() + arg.size()) throw bad("seed is not an integer");
    return RandomSpec{seed};
  }
  if (kind == "llm") return LlmSpec{std::string(arg)};
  if (kind == "oracle") return OracleSpec{std::string(arg)};
  throw bad("unknown policy kind");
}

std::string to_string(const PolicySpec& spec) {
  struct Visitor {
    std::string operator()(const FixedSpec& s) const {
      return "fixed:" + std::string(ares::to_string(s.level));
    }
    std::string operator()(const RandomSpec& s) const { return "random:" + std::to_string(s.seed); }
    std::string operator()(const LlmSpec& s) const { return "llm:" + s.endpoint; }
    std::string operator()(const OracleSpec& s) const { return "oracle:" + s.labels_path; }
  };
  return std::visit(Visitor{}, spec);
}

RouterDecision decide(const Policy& policy, const std::string& context,
                      const std::string& observation, const StepKey& key) {
  return policy.decide(context, observation, key);
}

RouterDecision RandomPolicy::decide(const std::string&, const std::string&,
                                    const StepKey& key) const {
  const std::uint64_t draw = SeedMixer(seed_)
                                 .add(key.task_id)
                                 .add(key.sample)
                                 .add(static_cast<std::uint64_t>(key.index))
                                 .value();
  return RouterDecision{kAllEfforts[draw % kNumEfforts], {}, {}};
}

RouterDecision LlmPolicy::decide(const std::string& context, const std::string&,
                                 const StepKey& key) const {
  const std::uint64_t seed = SeedMixer(seed_)
                                 .add(key.task_id)
                                 .add(key.sample)
                                 .add(static_cast<std::uint64_t>(key.index))
                                 .value();
  const gateway::RouterReply reply = gateway::router_complete(context, *router_, seed);
  ParsedRouterOutput parsed = parse_router_output(reply.text);
  return RouterDecision{parsed.effort, std::move(parsed.rationale), reply.usage};
}

void LabelTable::set(const std::string& task_id, int step, EffortLevel effort) {
  labels_[{task_id, step}] = effort;
}

std::optional<EffortLevel> LabelTable::find(const std::string& task_id, int step) const {
  auto it = labels_.find({task_id, step});
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

LabelTable LabelTable::from_jsonl(const std::filesystem::path& path) {
  LabelTable table;
  for (const auto& row : read_jsonl(path).rows) {
    auto it = row.find("label");
    if (it == row.end() || it->is_null()) continue;
    table.set(row.at("task_id").get<std::string>(), row.at("step_index").get<int>(),
              parse_effort(it->get<std::string>()));
  }
  return table;
}

RouterDecision OraclePolicy::decide(const std::string&, const std::string&,
                                    const StepKey& key) const {
  auto label = labels_.find(key.task_id, key.index);
  if (!label) {
    throw Error(ErrorCode::kOracleMiss,
                "no label for (" + key.task_id + ", " + std::to_string(key.index) + ")");
  }
  return RouterDecision{*label, {}, {}};
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const RouterLookup& routers,
                                    std::uint64_t seed) {
  if (const auto* s = std::get_if<FixedSpec>(&spec)) return std::make_unique<FixedPolicy>(s->level);
  if (const auto* s = std::get_if<RandomSpec>(&spec)) return std::make_unique<RandomPolicy>(s->seed);
  if (const auto* s = std::get_if<LlmSpec>(&spec)) {
    auto router = routers ? routers(s->endpoint) : nullptr;
    if (!router) {
      throw Error(ErrorCode::kConfigInvalid, "no router endpoint named '" + s->endpoint + "'");
    }
    return std::make_unique<LlmPolicy>(std::move(router), seed);
  }
  const auto& oracle = std::get<OracleSpec>(spec);
  return std::make_unique<OraclePolicy>(LabelTable::from_jsonl(oracle.labels_path));
}

}  // namespace ares::routing

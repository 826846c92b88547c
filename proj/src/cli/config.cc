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

#include "ares/cli/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "ares/core/errors.h"
#include "ares/core/hash.h"
#include "ares/core/text.h"

namespace ares::cli {
namespace {

struct Location {
  std::string_view origin;
  int line = 0;
};

[[noreturn]] void invalid(const Location& at, const std::string& msg) {
  throw Error(ErrorCode::kConfigInvalid,
              std::string(at.origin) + ":" + std::to_string(at.line) + ": " + msg);
}

long long to_int(const Location& at, std::string_view key, std::string_view v) {
  long long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    invalid(at, std::string(key) + ": expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

std::uint64_t to_u64(const Location& at, std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    invalid(at, std::string(key) + ": expected an unsigned integer, got '" + std::string(v) + "'");
  }
  return out;
}

double to_real(const Location& at, std::string_view key, std::string_view v) {
  const std::string s(v);
  char* end = nullptr;
  const double out = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') {
    invalid(at, std::string(key) + ": expected a number, got '" + s + "'");
  }
  return out;
}

bool to_bool(const Location& at, std::string_view key, std::string_view v) {
  if (v == "true") return true;
  if (v == "false") return false;
  invalid(at, std::string(key) + ": expected true or false, got '" + std::string(v) + "'");
}

std::vector<std::string> to_list(std::string_view v) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= v.size(); ++i) {
    if (i == v.size() || v[i] == ',') {
      const auto item = text::trim(v.substr(start, i - start));
      if (!item.empty()) out.emplace_back(item);
      start = i + 1;
    }
  }
  return out;
}

int to_int32(const Location& at, std::string_view key, std::string_view v) {
  return static_cast<int>(to_int(at, key, v));
}

std::optional<std::size_t> effort_suffix(std::string_view key, std::string_view prefix) {
  if (key.substr(0, prefix.size()) != prefix) return std::nullopt;
  if (auto e = try_parse_effort(key.substr(prefix.size()))) return index_of(*e);
  return std::nullopt;
}

void set_endpoint_field(gateway::EndpointConfig& ep, const Location& at, std::string_view key,
                        std::string_view field, std::string_view v) {
  if (field == "kind") {
    if (v != "http" && v != "sim" && v != "stub") invalid(at, std::string(key) + ": kind must be http, sim or stub");
    ep.kind = v;
  } else if (field == "base_url") {
    ep.base_url = v;
  } else if (field == "model") {
    ep.model_name = v;
  } else if (field == "timeout_s") {
    ep.timeout_s = to_real(at, key, v);
  } else if (field == "max_attempts") {
    ep.retry.max_attempts = to_int32(at, key, v);
  } else if (field == "backoff_s") {
    ep.retry.backoff_base_s = to_real(at, key, v);
  } else if (field == "max_concurrency") {
    ep.max_concurrency = to_int32(at, key, v);
  } else if (field == "temperature") {
    ep.temperature = to_real(at, key, v);
  } else if (field == "api_key_env") {
    ep.api_key_env = v;
  } else if (field == "template") {
    ep.template_id = v;
  } else if (field == "replies") {
    ep.stub_replies = to_list(v);
  } else {
    invalid(at, "unknown key '" + std::string(key) + "'");
  }
}

void apply(RunConfig& c, const Location& at, std::string_view key, std::string_view v) {
  auto& a = c.annotation;
  auto& r = c.reward;
  auto& s = c.sim;
  const std::string k(key);

  if (key.substr(0, 10) == "endpoints.") {
    const auto rest = key.substr(10);
    const auto dot = rest.find('.');
    if (dot == std::string_view::npos || dot == 0) invalid(at, "unknown key '" + k + "'");
    const std::string name(rest.substr(0, dot));
    auto& ep = c.endpoints[name];
    ep.name = name;
    set_endpoint_field(ep, at, key, rest.substr(dot + 1), v);
    return;
  }
  if (key.substr(0, 23) == "annotation.tool_ignore.") {
    const auto list = to_list(v);
    a.tool_ignore[std::string(key.substr(23))] = std::set<std::string>(list.begin(), list.end());
    return;
  }
  if (auto i = effort_suffix(key, "reward.cost.")) {
    r.cost_per_effort[*i] = to_real(at, key, v);
    return;
  }
  if (auto i = effort_suffix(key, "reward.unnormalized_cost.")) {
    r.unnormalized_cost[*i] = to_real(at, key, v);
    return;
  }
  if (auto i = effort_suffix(key, "sim.capability.")) {
    s.profile.capability[*i] = to_real(at, key, v);
    return;
  }
  if (auto i = effort_suffix(key, "sim.token_cost.")) {
    s.profile.token_cost[*i] = to_int(at, key, v);
    return;
  }

  static const std::map<std::string, std::function<void(RunConfig&, const Location&,
                                                        std::string_view, std::string_view)>,
                        std::less<>>
      kSetters = {
          {"seed", [](RunConfig& c, const Location& at, auto k, auto v) { c.seed = to_u64(at, k, v); }},
          {"jobs", [](RunConfig& c, const Location& at, auto k, auto v) { c.jobs = to_int32(at, k, v); }},
          {"policy", [](RunConfig& c, const Location&, auto, auto v) { c.policy = v; }},
          {"roles.agent", [](RunConfig& c, const Location&, auto, auto v) { c.roles.agent = v; }},
          {"roles.judge", [](RunConfig& c, const Location&, auto, auto v) { c.roles.judge = v; }},
          {"roles.teacher", [](RunConfig& c, const Location&, auto, auto v) { c.roles.teacher = v; }},
          {"paths.prompts_dir", [](RunConfig& c, const Location&, auto, auto v) { c.paths.prompts_dir = v; }},
          {"paths.import", [](RunConfig& c, const Location&, auto, auto v) { c.paths.import = v; }},
          {"annotation.trials_k", [](RunConfig& c, const Location& at, auto k, auto v) { c.annotation.trials_k = to_int32(at, k, v); }},
          {"annotation.threshold_m", [](RunConfig& c, const Location& at, auto k, auto v) { c.annotation.threshold_m = to_int32(at, k, v); }},
          {"annotation.samples_n", [](RunConfig& c, const Location& at, auto k, auto v) { c.annotation.samples_n = to_int32(at, k, v); }},
          {"annotation.max_steps", [](RunConfig& c, const Location& at, auto k, auto v) { c.annotation.max_steps = to_int32(at, k, v); }},
          {"annotation.fallback", [](RunConfig& c, const Location& at, auto, auto v) {
             try {
               c.annotation.fallback = pipeline::parse_fallback(v);
             } catch (const Error& e) {
               invalid(at, e.what());
             }
           }},
          {"reward.outcome_success", [](RunConfig& c, const Location& at, auto k, auto v) { c.reward.outcome_success = to_real(at, k, v); }},
          {"reward.normalized", [](RunConfig& c, const Location& at, auto k, auto v) { c.reward.normalized = to_bool(at, k, v); }},
          {"reward.format_penalty", [](RunConfig& c, const Location& at, auto k, auto v) { c.reward.format_penalty = to_real(at, k, v); }},
          {"rl.rollouts_per_prompt", [](RunConfig& c, const Location& at, auto k, auto v) { c.rl.rollouts_per_prompt = to_int32(at, k, v); }},
          {"rl.group_size", [](RunConfig& c, const Location& at, auto k, auto v) { c.rl.trainer.group_size = to_int32(at, k, v); }},
          {"rl.max_steps", [](RunConfig& c, const Location& at, auto k, auto v) { c.rl.max_steps = to_int32(at, k, v); }},
          {"rl.variance_quantile", [](RunConfig& c, const Location& at, auto k, auto v) { c.rl.filter.variance_quantile = to_real(at, k, v); }},
          {"rl.keep_mixed", [](RunConfig& c, const Location& at, auto k, auto v) { c.rl.filter.keep_mixed = to_bool(at, k, v); }},
          {"rl.variance_cutoff", [](RunConfig& c, const Location& at, auto k, auto v) { c.rl.filter.variance_cutoff = to_real(at, k, v); }},
          {"rl.kl_coef", [](RunConfig& c, const Location& at, auto k, auto v) { c.rl.trainer.kl_coef = to_real(at, k, v); }},
          {"rl.learning_rate", [](RunConfig& c, const Location& at, auto k, auto v) { c.rl.trainer.learning_rate = to_real(at, k, v); }},
          {"rl.epochs", [](RunConfig& c, const Location& at, auto k, auto v) { c.rl.trainer.epochs = to_int32(at, k, v); }},
          {"rl.batch_size", [](RunConfig& c, const Location& at, auto k, auto v) { c.rl.trainer.batch_size = to_int32(at, k, v); }},
          {"sim.count", [](RunConfig& c, const Location& at, auto k, auto v) { c.sim.count = to_int32(at, k, v); }},
          {"sim.length_min", [](RunConfig& c, const Location& at, auto k, auto v) { c.sim.lengths.min = to_int32(at, k, v); }},
          {"sim.length_max", [](RunConfig& c, const Location& at, auto k, auto v) { c.sim.lengths.max = to_int32(at, k, v); }},
          {"sim.difficulty", [](RunConfig& c, const Location& at, auto, auto v) {
             try {
               c.sim.difficulty = sim::DifficultyDistribution::parse(v);
             } catch (const Error& e) {
               invalid(at, e.what());
             }
           }},
          {"sim.mode", [](RunConfig& c, const Location& at, auto k, auto v) {
             if (v == "deterministic") {
               c.sim.profile.mode = sim::SimMode::kDeterministic;
             } else if (v == "stochastic") {
               c.sim.profile.mode = sim::SimMode::kStochastic;
             } else {
               invalid(at, std::string(k) + ": expected deterministic or stochastic");
             }
           }},
          {"sim.action_tokens", [](RunConfig& c, const Location& at, auto k, auto v) { c.sim.profile.action_tokens = to_int(at, k, v); }},
      };
  auto it = kSetters.find(key);
  if (it == kSetters.end()) invalid(at, "unknown key '" + k + "'");
  it->second(c, at, key, v);
}

}  // namespace

RunConfig parse_config(std::string_view text, std::string_view origin) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  Location at{origin, 0};
  while (std::getline(in, raw)) {
    ++at.line;
    std::string_view line = raw;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line = line.substr(0, i);
        break;
      }
    }
    line = text::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) invalid(at, "expected 'key = value'");
    const std::string_view key = text::trim(line.substr(0, eq));
    const std::string_view value = text::trim(line.substr(eq + 1));
    if (key.empty()) invalid(at, "missing key");
    if (!seen.emplace(key).second) invalid(at, "duplicate key '" + std::string(key) + "'");
    apply(config, at, key, value);
  }
  validate(config);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingInput, "config file '" + path.string() + "' not found");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

gateway::EndpointConfig endpoint(const RunConfig& config, const std::string& name) {
  if (auto it = config.endpoints.find(name); it != config.endpoints.end()) return it->second;
  if (name == "sim" || name == "stub") {
    gateway::EndpointConfig ep;
    ep.name = name;
    ep.kind = name;
    return ep;
  }
  throw Error(ErrorCode::kConfigInvalid, "unknown endpoint '" + name + "'");
}

void validate(const RunConfig& config) {
  try {
    pipeline::validate(config.annotation);
    rl::validate(config.reward, config.rl.max_steps);
    sim::validate(config.sim.profile);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigInvalid, e.what());
  }
  for (const auto& [name, ep] : config.endpoints) {
    if (ep.kind == "http" && ep.base_url.empty()) {
      throw Error(ErrorCode::kConfigInvalid, "endpoints." + name + ".base_url is required for http");
    }
    if (ep.max_concurrency < 1) {
      throw Error(ErrorCode::kConfigInvalid, "endpoints." + name + ".max_concurrency must be >= 1");
    }
  }
  const auto resolve = [&](const std::string& role, const std::string& name) {
    try {
      (void)endpoint(config, name);
    } catch (const Error&) {
      throw Error(ErrorCode::kConfigInvalid, "roles." + role + " names unknown endpoint '" + name + "'");
    }
  };
  resolve("agent", config.roles.agent);
  resolve("judge", config.roles.judge);
  resolve("teacher", config.roles.teacher);
  const auto spec = routing::parse_policy_spec(config.policy);
  if (const auto* llm = std::get_if<routing::LlmSpec>(&spec)) {
    if (!config.endpoints.count(llm->endpoint)) {
      throw Error(ErrorCode::kConfigInvalid, "policy names unknown endpoint '" + llm->endpoint + "'");
    }
  }
  if (config.rl.rollouts_per_prompt < 1 || config.rl.trainer.group_size < 2) {
    throw Error(ErrorCode::kConfigInvalid, "rl.rollouts_per_prompt must be >= 1 and rl.group_size >= 2");
  }
  if (!(config.rl.filter.variance_quantile >= 0.0 && config.rl.filter.variance_quantile <= 1.0)) {
    throw Error(ErrorCode::kConfigInvalid, "rl.variance_quantile must be in [0, 1]");
  }
  if (config.sim.count < 0 || config.sim.lengths.min < 1 || config.sim.lengths.min > config.sim.lengths.max ||
      config.sim.lengths.max > sim::kMaxTaskLength) {
    throw Error(ErrorCode::kConfigInvalid, "sim.count or sim length range out of bounds");
  }
}

nlohmann::json to_json(const RunConfig& c) {
  using nlohmann::json;
  auto per_effort = [](const auto& t) {
    json j = json::object();
    for (EffortLevel e : kAllEfforts) j[std::string(to_string(e))] = t[index_of(e)];
    return j;
  };
  json endpoints = json::object();
  for (const auto& [name, ep] : c.endpoints) {
    json e{{"kind", ep.kind},
           {"base_url", ep.base_url},
           {"model", ep.model_name},
           {"timeout_s", ep.timeout_s},
           {"max_attempts", ep.retry.max_attempts},
           {"backoff_s", ep.retry.backoff_base_s},
           {"max_concurrency", ep.max_concurrency},
           {"api_key_env", ep.api_key_env},
           {"template", ep.template_id},
           {"replies", ep.stub_replies}};
    e["temperature"] = ep.temperature ? json(*ep.temperature) : json(nullptr);
    endpoints[name] = e;
  }
  json ignore = json::object();
  for (const auto& [tool, params] : c.annotation.tool_ignore) ignore[tool] = params;
  const auto& a = c.annotation;
  const auto& r = c.reward;
  const auto& p = c.sim.profile;
  return json{
      {"endpoints", endpoints},
      {"roles", {{"agent", c.roles.agent}, {"judge", c.roles.judge}, {"teacher", c.roles.teacher}}},
      {"annotation",
       {{"trials_k", a.trials_k},
        {"threshold_m", a.threshold_m},
        {"fallback", std::string(pipeline::to_string(a.fallback))},
        {"samples_n", a.samples_n},
        {"max_steps", a.max_steps},
        {"tool_ignore", ignore}}},
      {"reward",
       {{"outcome_success", r.outcome_success},
        {"cost", per_effort(r.cost_per_effort)},
        {"normalized", r.normalized},
        {"unnormalized_cost", per_effort(r.unnormalized_cost)},
        {"format_penalty", r.format_penalty}}},
      {"rl",
       {{"rollouts_per_prompt", c.rl.rollouts_per_prompt},
        {"group_size", c.rl.trainer.group_size},
        {"max_steps", c.rl.max_steps},
        {"variance_quantile", c.rl.filter.variance_quantile},
        {"keep_mixed", c.rl.filter.keep_mixed},
        {"variance_cutoff", c.rl.filter.variance_cutoff ? json(*c.rl.filter.variance_cutoff) : json(nullptr)},
        {"kl_coef", c.rl.trainer.kl_coef},
        {"learning_rate", c.rl.trainer.learning_rate},
        {"epochs", c.rl.trainer.epochs},
        {"batch_size", c.rl.trainer.batch_size}}},
      {"sim",
       {{"count", c.sim.count},
        {"length_min", c.sim.lengths.min},
        {"length_max", c.sim.lengths.max},
        {"difficulty", c.sim.difficulty.to_string()},
        {"mode", p.mode == sim::SimMode::kDeterministic ? "deterministic" : "stochastic"},
        {"capability", per_effort(p.capability)},
        {"token_cost", per_effort(p.token_cost)},
        {"action_tokens", p.action_tokens}}},
      {"policy", c.policy},
      {"paths", {{"prompts_dir", c.paths.prompts_dir}, {"import", c.paths.import}}},
      {"seed", c.seed}};
}

std::string config_hash(const RunConfig& config) {
  return to_hex(fnv1a64(to_json(config).dump()));
}

}  // namespace ares::cli

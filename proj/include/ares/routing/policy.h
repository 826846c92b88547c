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
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "ares/core/effort.h"
#include "ares/core/types.h"
#include "ares/gateway/endpoint.h"

namespace ares::routing {

struct StepKey {
  std::string task_id;
  int index = 1;  // 1-based turn
  // Distinguishes repeated rollouts of the same task (group members).
  std::uint64_t sample = 0;
};

struct RouterDecision {
  EffortLevel effort = EffortLevel::kHigh;
  std::string rationale;
  TokenUsage router_usage;
};

struct FixedSpec {
  EffortLevel level = EffortLevel::kHigh;
};
struct RandomSpec {
  std::uint64_t seed = 0;
};
struct LlmSpec {
  std::string endpoint;
};
struct OracleSpec {
  std::string labels_path;
};
using PolicySpec = std::variant<FixedSpec, RandomSpec, LlmSpec, OracleSpec>;

// "fixed:high", "random:42", "llm:router", "oracle:labels.jsonl".
// Throws ErrorCode::kConfigInvalid.
PolicySpec parse_policy_spec(std::string_view text);
std::string to_string(const PolicySpec& spec);

class Policy {
 public:
  virtual ~Policy() = default;
  virtual RouterDecision decide(const std::string& context, const std::string& observation,
                                const StepKey& key) const = 0;
};

RouterDecision decide(const Policy& policy, const std::string& context,
                      const std::string& observation, const StepKey& key);

class FixedPolicy final : public Policy {
 public:
  explicit FixedPolicy(EffortLevel level) : level_(level) {}
  RouterDecision decide(const std::string&, const std::string&, const StepKey&) const override {
    return RouterDecision{level_, {}, {}};
  }

 private:
  EffortLevel level_;
};

// Uniform over the three levels. Each draw is a pure function of
// (seed, task_id, sample, index), so tasks never perturb one another.
class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : seed_(seed) {}
  RouterDecision decide(const std::string&, const std::string&, const StepKey& key) const override;

 private:
  std::uint64_t seed_;
};

class LlmPolicy final : public Policy {
 public:
  LlmPolicy(std::shared_ptr<gateway::RouterEndpoint> router, std::uint64_t seed = 0)
      : router_(std::move(router)), seed_(seed) {}
  RouterDecision decide(const std::string& context, const std::string& observation,
                        const StepKey& key) const override;

 private:
  std::shared_ptr<gateway::RouterEndpoint> router_;
  std::uint64_t seed_;
};

// Effort labels keyed by (task_id, 1-based step).
class LabelTable {
 public:
  void set(const std::string& task_id, int step, EffortLevel effort);
  std::optional<EffortLevel> find(const std::string& task_id, int step) const;
  std::size_t size() const { return labels_.size(); }

  // Reads label records (task_id, step_index, label); rows without a label
  // (discarded steps) are skipped.
  static LabelTable from_jsonl(const std::filesystem::path& path);

 private:
  std::map<std::pair<std::string, int>, EffortLevel> labels_;
};

class OraclePolicy final : public Policy {
 public:
  explicit OraclePolicy(LabelTable labels) : labels_(std::move(labels)) {}
  // Throws ErrorCode::kOracleMiss for an unlabeled step.
  RouterDecision decide(const std::string&, const std::string&, const StepKey& key) const override;

 private:
  LabelTable labels_;
};

using RouterLookup =
    std::function<std::shared_ptr<gateway::RouterEndpoint>(const std::string& name)>;

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const RouterLookup& routers,
                                    std::uint64_t seed = 0);

}  // namespace ares::routing

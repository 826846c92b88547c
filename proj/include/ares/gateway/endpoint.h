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
#include <optional>
#include <string>
#include <string_view>

#include "ares/core/effort.h"
#include "ares/core/types.h"

namespace ares::gateway {

struct CompletionRequest {
  // Serialized interaction context (objective, history and the current
  // observation) in the router-context layout.
  std::string history;
  // The current observation o_t on its own.
  std::string observation;
  std::optional<EffortLevel> effort;
  std::string template_id = "agent";
  std::optional<std::uint64_t> seed;
};

struct CompletionResult {
  std::string reasoning;
  std::string action;
  TokenUsage usage;
  std::string raw;
};

struct JudgeVerdict {
  bool equivalent = false;
  std::string justification;
};

struct RouterReply {
  std::string text;
  TokenUsage usage;
};

struct RationaleRequest {
  std::string context;
  EffortLevel label = EffortLevel::kHigh;
  std::map<EffortLevel, std::string> responses_by_effort;
  // Set on the single re-ask after an over-long rationale.
  std::optional<int> previous_sentence_count;
};

// The agent being routed. Implementations must be safe to call from
// several threads at once.
class AgentEndpoint {
 public:
  virtual ~AgentEndpoint() = default;
  virtual CompletionResult complete(const CompletionRequest& request) = 0;
};

class RouterEndpoint {
 public:
  virtual ~RouterEndpoint() = default;
  virtual RouterReply complete(const std::string& context,
                               std::optional<std::uint64_t> seed) = 0;
};

class JudgeEndpoint {
 public:
  virtual ~JudgeEndpoint() = default;
  virtual JudgeVerdict judge(std::string_view predicted, std::string_view gold,
                             ActionDomain domain) = 0;
};

class TeacherEndpoint {
 public:
  virtual ~TeacherEndpoint() = default;
  // Raw teacher text; validation happens in teacher_rationalize.
  virtual std::string generate(const RationaleRequest& request) = 0;
};

// One agent step at the requested effort. Requires request.effort.
CompletionResult agent_complete(const CompletionRequest& request, AgentEndpoint& agent);

// Only the search and message domains are judged; the others are exact
// checks and never reach a judge (std::invalid_argument).
JudgeVerdict judge_equivalence(std::string_view predicted, std::string_view gold,
                               ActionDomain domain, JudgeEndpoint& judge);

inline constexpr int kMaxRationaleSentences = 5;

// Teacher rationale limited to five sentences: one re-ask when the reply
// is longer, then truncation to the first five. Empty replies throw
// ErrorCode::kRationaleEmpty.
std::string teacher_rationalize(const std::string& context, EffortLevel label,
                                const std::map<EffortLevel, std::string>& responses_by_effort,
                                TeacherEndpoint& teacher);

// Raw router text, passed through untouched.
RouterReply router_complete(const std::string& context, RouterEndpoint& router,
                            std::optional<std::uint64_t> seed = std::nullopt);

// "yes"/"no" verdict parsing shared by HTTP judges. The first word decides;
// the remainder becomes the justification. Throws kMalformedVerdict.
JudgeVerdict parse_verdict(std::string_view reply);

}  // namespace ares::gateway

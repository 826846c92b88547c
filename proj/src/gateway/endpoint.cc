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

#include "ares/gateway/endpoint.h"

#include <stdexcept>

#include "ares/core/errors.h"
#include "ares/core/text.h"

namespace ares::gateway {

CompletionResult agent_complete(const CompletionRequest& request, AgentEndpoint& agent) {
  if (!request.effort) {
    throw std::invalid_argument("agent_complete: request has no effort level");
  }
  CompletionResult result = agent.complete(request);
  if (result.usage.reasoning_tokens < 0 || result.usage.action_tokens < 0) {
    throw Error(ErrorCode::kMalformedResponse, "negative token usage from agent");
  }
  return result;
}

JudgeVerdict judge_equivalence(std::string_view predicted, std::string_view gold,
                               ActionDomain domain, JudgeEndpoint& judge) {
  if (domain != ActionDomain::kSearch && domain != ActionDomain::kMessage) {
    throw std::invalid_argument("judge_equivalence: domain '" +
                                std::string(to_string(domain)) +
                                "' is checked exactly, not judged");
  }
  return judge.judge(predicted, gold, domain);
}

std::string teacher_rationalize(const std::string& context, EffortLevel label,
                                const std::map<EffortLevel, std::string>& responses_by_effort,
                                TeacherEndpoint& teacher) {
  if (text::trim(context).empty()) {
    throw std::invalid_argument("teacher_rationalize: empty context");
  }
  RationaleRequest request{context, label, responses_by_effort, std::nullopt};
  std::string reply(text::trim(teacher.generate(request)));
  if (reply.empty()) throw Error(ErrorCode::kRationaleEmpty, "teacher returned no text");

  auto sentences = text::split_sentences(reply);
  if (sentences.size() <= kMaxRationaleSentences) return reply;

  request.previous_sentence_count = static_cast<int>(sentences.size());
  reply = std::string(text::trim(teacher.generate(request)));
  if (reply.empty()) throw Error(ErrorCode::kRationaleEmpty, "teacher re-ask returned no text");
  sentences = text::split_sentences(reply);
  if (sentences.size() <= kMaxRationaleSentences) return reply;

  std::string truncated;
  for (std::size_t i = 0; i < kMaxRationaleSentences; ++i) {
    if (i) truncated.push_back(' ');
    truncated += sentences[i];
  }
  return truncated;
}

RouterReply router_complete(const std::string& context, RouterEndpoint& router,
                            std::optional<std::uint64_t> seed) {
  return router.complete(context, seed);
}

JudgeVerdict parse_verdict(std::string_view reply) {
  const std::string_view body = text::trim(reply);
  std::string first = text::to_lower(text::first_token(body));
  while (!first.empty() && !std::isalpha(static_cast<unsigned char>(first.back()))) {
    first.pop_back();
  }
  while (!first.empty() && !std::isalpha(static_cast<unsigned char>(first.front()))) {
    first.erase(first.begin());
  }
  JudgeVerdict v;
  if (first == "yes") {
    v.equivalent = true;
  } else if (first == "no") {
    v.equivalent = false;
  } else {
    throw Error(ErrorCode::kMalformedVerdict,
                "judge reply is neither yes nor no: '" + std::string(body.substr(0, 80)) + "'");
  }
  v.justification = std::string(text::trim(body.substr(text::first_token(body).size())));
  return v;
}

}  // namespace ares::gateway

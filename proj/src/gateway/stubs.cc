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

#include "ares/gateway/stubs.h"

#include "ares/core/text.h"

namespace ares::gateway {

JudgeVerdict StubJudge::judge(std::string_view predicted, std::string_view gold,
                              ActionDomain /*domain*/) {
  const bool same = text::collapse_whitespace(predicted) == text::collapse_whitespace(gold);
  return JudgeVerdict{same, same ? "normalized strings are identical"
                                 : "normalized strings differ"};
}

std::string StubTeacher::generate(const RationaleRequest& request) {
  std::size_t steps = 0;
  for (std::size_t pos = request.context.find("\nStep "); pos != std::string::npos;
       pos = request.context.find("\nStep ", pos + 1)) {
    ++steps;
  }
  const std::string label(to_string(request.label));
  return "The next step calls for " + label + " reasoning effort. " +
         std::to_string(steps) +
         " earlier steps are recorded in the interaction history. The current observation "
         "and remaining objective fit a " + label + " effort budget.";
}

ScriptedRouter::ScriptedRouter(std::vector<std::string> replies, TokenUsage usage_per_call)
    : replies_(std::move(replies)), usage_(usage_per_call) {
  if (replies_.empty()) replies_.push_back("high");
}

RouterReply ScriptedRouter::complete(const std::string& /*context*/,
                                     std::optional<std::uint64_t> /*seed*/) {
  const std::size_t i = calls_.fetch_add(1);
  return RouterReply{replies_[std::min(i, replies_.size() - 1)], usage_};
}

}  // namespace ares::gateway

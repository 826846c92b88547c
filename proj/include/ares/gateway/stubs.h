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

#include <atomic>
#include <mutex>
#include <string>
#include <vector>

#include "ares/gateway/endpoint.h"

namespace ares::gateway {

// Judge by string-normalized equality: trimmed, whitespace runs collapsed.
class StubJudge final : public JudgeEndpoint {
 public:
  JudgeVerdict judge(std::string_view predicted, std::string_view gold,
                     ActionDomain domain) override;
};

// Deterministic teacher. The rationale names the label word and the number
// of prior steps it saw.
class StubTeacher final : public TeacherEndpoint {
 public:
  std::string generate(const RationaleRequest& request) override;
};

// Replays a fixed list of replies, then repeats the last one.
class ScriptedRouter final : public RouterEndpoint {
 public:
  explicit ScriptedRouter(std::vector<std::string> replies,
                          TokenUsage usage_per_call = {0, 0});
  RouterReply complete(const std::string& context, std::optional<std::uint64_t> seed) override;

  std::size_t calls() const { return calls_.load(); }

 private:
  std::vector<std::string> replies_;
  TokenUsage usage_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace ares::gateway

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

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <vector>

#include "ares/core/errors.h"
#include "ares/gateway/endpoint.h"
#include "ares/gateway/prompts.h"
#include "json.hpp"

namespace ares::gateway {

struct RetryPolicy {
  int max_attempts = 3;
  double backoff_base_s = 1.0;

  // Delay after failed attempt `attempt` (1-based): base * 2^(attempt-1).
  double backoff_after(int attempt) const {
    return backoff_base_s * std::ldexp(1.0, attempt - 1);
  }
};

struct EndpointConfig {
  std::string name;
  // "http" for a chat-completion server, "sim" for the simulated agent,
  // "stub" for the deterministic test doubles.
  std::string kind = "http";
  std::string base_url;
  std::string model_name;
  double timeout_s = 60.0;
  RetryPolicy retry;
  int max_concurrency = 8;
  std::optional<double> temperature;
  // Name of the environment variable holding the bearer token, if any.
  std::string api_key_env;
  // Prompt template used as the system message (empty: role default).
  std::string template_id;
  // Replies of a "stub" router, replayed in order.
  std::vector<std::string> stub_replies;
};

using Sleeper = std::function<void(double seconds)>;
Sleeper real_sleeper();

// Runs fn, repeating retryable ares::Error failures up to max_attempts.
template <typename Fn>
auto with_retry(const RetryPolicy& policy, const Sleeper& sleep, Fn&& fn) -> decltype(fn()) {
  const int attempts = std::max(1, policy.max_attempts);
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (const Error& e) {
      if (!is_retryable(e.code()) || attempt >= attempts) throw;
      if (sleep) sleep(policy.backoff_after(attempt));
    }
  }
}

struct HttpResponse {
  int status = 0;
  std::string body;
};

// POSTs a JSON body to `path` below the endpoint's base URL. Throws
// kTimeout or kUnreachable on transport failure.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse post_json(const std::string& path, const std::string& body) = 0;
};

std::shared_ptr<Transport> make_http_transport(const EndpointConfig& config);

struct ChatMessage {
  std::string role;
  std::string content;
};

struct ChatReply {
  std::string content;
  std::string reasoning_content;
  TokenUsage usage;
  std::string raw;
};

nlohmann::json build_chat_body(const EndpointConfig& config,
                               const std::vector<ChatMessage>& messages,
                               std::optional<EffortLevel> effort,
                               std::optional<std::uint64_t> seed);

// Throws kMalformedResponse when the choice or the usage block is missing.
ChatReply parse_chat_response(const std::string& body);

// Splits a single-body reply on its first `ACTION:` line. A separate
// reasoning channel, when present, takes precedence.
std::pair<std::string, std::string> split_reasoning_action(const std::string& content,
                                                           const std::string& reasoning_channel);

// Chat-completion client with retries and a per-endpoint concurrency cap.
class ChatClient {
 public:
  ChatClient(EndpointConfig config, std::shared_ptr<Transport> transport,
             Sleeper sleeper = real_sleeper());

  ChatReply chat(const std::vector<ChatMessage>& messages, std::optional<EffortLevel> effort,
                 std::optional<std::uint64_t> seed) const;

  const EndpointConfig& config() const { return config_; }

 private:
  EndpointConfig config_;
  std::shared_ptr<Transport> transport_;
  Sleeper sleeper_;
  std::shared_ptr<std::counting_semaphore<1024>> slots_;
};

class HttpAgentEndpoint final : public AgentEndpoint {
 public:
  HttpAgentEndpoint(ChatClient client, PromptRegistry prompts)
      : client_(std::move(client)), prompts_(std::move(prompts)) {}
  CompletionResult complete(const CompletionRequest& request) override;

 private:
  ChatClient client_;
  PromptRegistry prompts_;
};

class HttpRouterEndpoint final : public RouterEndpoint {
 public:
  HttpRouterEndpoint(ChatClient client, PromptRegistry prompts)
      : client_(std::move(client)), prompts_(std::move(prompts)) {}
  RouterReply complete(const std::string& context, std::optional<std::uint64_t> seed) override;

 private:
  ChatClient client_;
  PromptRegistry prompts_;
};

class HttpJudgeEndpoint final : public JudgeEndpoint {
 public:
  HttpJudgeEndpoint(ChatClient client, PromptRegistry prompts)
      : client_(std::move(client)), prompts_(std::move(prompts)) {}
  JudgeVerdict judge(std::string_view predicted, std::string_view gold,
                     ActionDomain domain) override;

 private:
  ChatClient client_;
  PromptRegistry prompts_;
};

class HttpTeacherEndpoint final : public TeacherEndpoint {
 public:
  HttpTeacherEndpoint(ChatClient client, PromptRegistry prompts)
      : client_(std::move(client)), prompts_(std::move(prompts)) {}
  std::string generate(const RationaleRequest& request) override;

 private:
  ChatClient client_;
  PromptRegistry prompts_;
};

// Messages sent to the teacher for one rationale request.
std::vector<ChatMessage> teacher_messages(const PromptRegistry& prompts,
                                          const RationaleRequest& request,
                                          std::string_view template_id = prompt_id::kRationale);

}  // namespace ares::gateway

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

#include "ares/gateway/http.h"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "ares/core/text.h"
#include "httplib.h"

namespace ares::gateway {
namespace {

class HttplibTransport final : public Transport {
 public:
  explicit HttplibTransport(const EndpointConfig& config) : config_(config) {
    const std::string& url = config.base_url;
    const auto scheme_end = url.find("://");
    const auto path_start =
        url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    origin_ = path_start == std::string::npos ? url : url.substr(0, path_start);
    prefix_ = path_start == std::string::npos ? "" : url.substr(path_start);
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
    if (!config.api_key_env.empty()) {
      if (const char* key = std::getenv(config.api_key_env.c_str())) api_key_ = key;
    }
  }

  HttpResponse post_json(const std::string& path, const std::string& body) override {
    httplib::Client client(origin_);
    const auto seconds = std::chrono::duration<double>(config_.timeout_s);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(seconds);
    client.set_connection_timeout(micros);
    client.set_read_timeout(micros);
    client.set_write_timeout(micros);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    auto res = client.Post(prefix_ + path, headers, body, "application/json");
    if (!res) {
      const auto err = res.error();
      const std::string what = httplib::to_string(err);
      if (err == httplib::Error::Read || err == httplib::Error::Write ||
          err == httplib::Error::ConnectionTimeout) {
        throw Error(ErrorCode::kTimeout, config_.name + ": " + what);
      }
      throw Error(ErrorCode::kUnreachable, config_.name + " (" + origin_ + "): " + what);
    }
    return HttpResponse{res->status, res->body};
  }

 private:
  EndpointConfig config_;
  std::string origin_;
  std::string prefix_;
  std::string api_key_;
};

std::string system_template(const EndpointConfig& config, std::string_view fallback) {
  return config.template_id.empty() ? std::string(fallback) : config.template_id;
}

}  // namespace

Sleeper real_sleeper() {
  return [](double seconds) {
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
  };
}

std::shared_ptr<Transport> make_http_transport(const EndpointConfig& config) {
  return std::make_shared<HttplibTransport>(config);
}

nlohmann::json build_chat_body(const EndpointConfig& config,
                               const std::vector<ChatMessage>& messages,
                               std::optional<EffortLevel> effort,
                               std::optional<std::uint64_t> seed) {
  nlohmann::json msgs = nlohmann::json::array();
  for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
  nlohmann::json body{{"model", config.model_name}, {"messages", msgs}};
  if (effort) body["reasoning_effort"] = std::string(to_string(*effort));
  if (seed) body["seed"] = *seed;
  if (config.temperature) body["temperature"] = *config.temperature;
  return body;
}

ChatReply parse_chat_response(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kMalformedResponse, std::string("response is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("choices") || !j["choices"].is_array() ||
      j["choices"].empty()) {
    throw Error(ErrorCode::kMalformedResponse, "response has no choices");
  }
  const auto& message = j["choices"][0].value("message", nlohmann::json::object());
  ChatReply reply;
  reply.raw = body;
  if (message.contains("content") && message["content"].is_string()) {
    reply.content = message["content"].get<std::string>();
  }
  for (const char* key : {"reasoning_content", "reasoning"}) {
    if (message.contains(key) && message[key].is_string()) {
      reply.reasoning_content = message[key].get<std::string>();
      break;
    }
  }
  if (!j.contains("usage") || !j["usage"].is_object() ||
      !j["usage"].contains("completion_tokens")) {
    throw Error(ErrorCode::kMalformedResponse, "response carries no token usage");
  }
  const auto& usage = j["usage"];
  const auto completion = usage["completion_tokens"].get<std::int64_t>();
  std::int64_t reasoning = 0;
  if (usage.contains("completion_tokens_details") &&
      usage["completion_tokens_details"].is_object()) {
    reasoning = usage["completion_tokens_details"].value("reasoning_tokens", std::int64_t{0});
  }
  if (completion < 0 || reasoning < 0 || reasoning > completion) {
    throw Error(ErrorCode::kMalformedResponse, "inconsistent token usage");
  }
  reply.usage = TokenUsage{reasoning, completion - reasoning};
  return reply;
}

std::pair<std::string, std::string> split_reasoning_action(const std::string& content,
                                                           const std::string& reasoning_channel) {
  auto strip_label = [](std::string_view s, std::string_view label) {
    s = text::trim(s);
    if (text::starts_with_icase(s, label)) s = text::trim(s.substr(label.size()));
    return std::string(s);
  };
  std::size_t line_start = 0;
  while (line_start <= content.size()) {
    std::size_t line_end = content.find('\n', line_start);
    if (line_end == std::string::npos) line_end = content.size();
    std::string_view line(content.data() + line_start, line_end - line_start);
    std::size_t lead = 0;
    while (lead < line.size() && (line[lead] == ' ' || line[lead] == '\t')) ++lead;
    if (line.substr(lead).starts_with("ACTION:")) {
      std::string reasoning =
          reasoning_channel.empty()
              ? strip_label(std::string_view(content).substr(0, line_start), "REASON:")
              : std::string(text::trim(reasoning_channel));
      std::string action(text::trim(
          std::string_view(content).substr(line_start + lead + std::string_view("ACTION:").size())));
      return {reasoning, action};
    }
    line_start = line_end + 1;
  }
  if (!reasoning_channel.empty() && !text::trim(content).empty()) {
    return {std::string(text::trim(reasoning_channel)), std::string(text::trim(content))};
  }
  throw Error(ErrorCode::kMalformedResponse, "reply has no ACTION: line");
}

ChatClient::ChatClient(EndpointConfig config, std::shared_ptr<Transport> transport,
                       Sleeper sleeper)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      sleeper_(std::move(sleeper)),
      slots_(std::make_shared<std::counting_semaphore<1024>>(
          std::clamp(config_.max_concurrency, 1, 1024))) {
  if (config_.retry.max_attempts < 1) {
    throw Error(ErrorCode::kConfigInvalid, "endpoint '" + config_.name + "': max_attempts < 1");
  }
}

ChatReply ChatClient::chat(const std::vector<ChatMessage>& messages,
                           std::optional<EffortLevel> effort,
                           std::optional<std::uint64_t> seed) const {
  const std::string body = build_chat_body(config_, messages, effort, seed).dump();
  return with_retry(config_.retry, sleeper_, [&] {
    slots_->acquire();
    HttpResponse res;
    try {
      res = transport_->post_json("/chat/completions", body);
    } catch (...) {
      slots_->release();
      throw;
    }
    slots_->release();
    if (res.status == 408 || res.status == 429 || res.status >= 500) {
      throw Error(ErrorCode::kUnreachable,
                  config_.name + ": HTTP " + std::to_string(res.status));
    }
    if (res.status != 200) {
      throw Error(ErrorCode::kMalformedResponse,
                  config_.name + ": HTTP " + std::to_string(res.status));
    }
    return parse_chat_response(res.body);
  });
}

CompletionResult HttpAgentEndpoint::complete(const CompletionRequest& request) {
  const std::string system = prompts_.render(
      request.template_id.empty() ? system_template(client_.config(), prompt_id::kAgent)
                                  : request.template_id);
  const ChatReply reply = client_.chat({{"system", system}, {"user", request.history}},
                                       request.effort, request.seed);
  auto [reasoning, action] = split_reasoning_action(reply.content, reply.reasoning_content);
  return CompletionResult{std::move(reasoning), std::move(action), reply.usage, reply.raw};
}

RouterReply HttpRouterEndpoint::complete(const std::string& context,
                                         std::optional<std::uint64_t> seed) {
  const std::string system =
      prompts_.render(system_template(client_.config(), prompt_id::kRouter));
  const ChatReply reply =
      client_.chat({{"system", system}, {"user", context}}, std::nullopt, seed);
  return RouterReply{reply.content, reply.usage};
}

JudgeVerdict HttpJudgeEndpoint::judge(std::string_view predicted, std::string_view gold,
                                      ActionDomain domain) {
  const std::string system =
      prompts_.render(system_template(client_.config(), prompt_id::kEvaluator));
  const std::string user = prompts_.render(
      prompt_id::kJudgeUser, {{"domain", std::string(to_string(domain))},
                              {"predicted", std::string(predicted)},
                              {"gold", std::string(gold)}});
  const ChatReply reply =
      client_.chat({{"system", system}, {"user", user}}, std::nullopt, std::nullopt);
  return parse_verdict(reply.content);
}

std::vector<ChatMessage> teacher_messages(const PromptRegistry& prompts,
                                          const RationaleRequest& request,
                                          std::string_view template_id) {
  std::string responses;
  for (const auto& [effort, response] : request.responses_by_effort) {
    responses += "[" + std::string(to_string(effort)) + "] " + response + "\n";
  }
  if (!responses.empty()) responses.pop_back();
  std::string user = prompts.render(prompt_id::kRationaleUser,
                                    {{"context", request.context},
                                     {"label", std::string(to_string(request.label))},
                                     {"responses", responses}});
  if (request.previous_sentence_count) {
    user += "\n\n" + prompts.render(prompt_id::kRationaleReask,
                                    {{"count", std::to_string(*request.previous_sentence_count)}});
  }
  return {{"system", prompts.render(template_id)}, {"user", user}};
}

std::string HttpTeacherEndpoint::generate(const RationaleRequest& request) {
  const auto messages = teacher_messages(
      prompts_, request, system_template(client_.config(), prompt_id::kRationale));
  return client_.chat(messages, std::nullopt, std::nullopt).content;
}

}  // namespace ares::gateway

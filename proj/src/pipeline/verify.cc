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

#include "ares/pipeline/verify.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "ares/core/errors.h"
#include "ares/core/text.h"
#include "json.hpp"

namespace ares::pipeline {
namespace {

using nlohmann::json;

[[noreturn]] void unparseable(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::kUnparseableToolCall, why + ": '" + std::string(text) + "'");
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_' || c == '.' || c == '-';
  });
}

// Strings become their JSON dump, so '"a"' and "'a'" and a both compare
// equal; other literals canonicalize through the JSON parser when they can.
std::string canonical_value(std::string_view raw) {
  std::string v(text::trim(raw));
  if (v.size() >= 2 && v.front() == '\'' && v.back() == '\'') {
    return json(v.substr(1, v.size() - 2)).dump();
  }
  const json parsed = json::parse(v, nullptr, false);
  if (!parsed.is_discarded()) return parsed.dump();
  return json(v).dump();
}

// Splits on top-level commas, honoring quotes and brackets.
std::vector<std::string> split_args(std::string_view body, std::string_view whole) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  char quote = 0;
  bool escaped = false;
  for (char c : body) {
    if (quote) {
      cur += c;
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == quote) {
        quote = 0;
      }
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '(' || c == '[' || c == '{') {
      ++depth;
    } else if (c == ')' || c == ']' || c == '}') {
      if (--depth < 0) unparseable(whole, "unbalanced brackets");
    } else if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (quote || depth != 0) unparseable(whole, "unbalanced quotes or brackets");
  if (!text::trim(cur).empty() || !out.empty()) out.push_back(cur);
  return out;
}

ToolCall parse_json_call(const json& j, std::string_view whole) {
  if (!j.is_object()) unparseable(whole, "tool call is not an object");
  ToolCall call;
  auto name = j.find("name");
  if (name == j.end() || !name->is_string()) unparseable(whole, "tool call without a name");
  call.name = name->get<std::string>();
  json args = json::object();
  for (const char* key : {"arguments", "kwargs", "parameters"}) {
    if (auto it = j.find(key); it != j.end()) {
      args = *it;
      break;
    }
  }
  if (args.is_string()) {
    args = json::parse(args.get<std::string>(), nullptr, false);
    if (args.is_discarded()) unparseable(whole, "arguments string is not JSON");
  }
  if (args.is_null()) args = json::object();
  if (!args.is_object()) unparseable(whole, "arguments are not an object");
  for (const auto& [k, v] : args.items()) call.params.emplace_back(k, v.dump());
  return call;
}

}  // namespace

ToolCall parse_tool_call(std::string_view text) {
  const std::string s(text::trim(text));
  if (s.empty()) unparseable(text, "empty tool call");
  ToolCall call;
  if (s.front() == '{') {
    const json j = json::parse(s, nullptr, false);
    if (j.is_discarded()) unparseable(text, "invalid JSON");
    call = parse_json_call(j, text);
  } else {
    const auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')') unparseable(text, "expected name(...)");
    call.name = text::trim(std::string_view(s).substr(0, open));
    if (!is_identifier(call.name)) unparseable(text, "bad tool name");
    const std::string_view body = std::string_view(s).substr(open + 1, s.size() - open - 2);
    int positional = 0;
    for (const std::string& arg : split_args(body, text)) {
      const std::string a(text::trim(arg));
      if (a.empty()) unparseable(text, "empty argument");
      const auto eq = a.find('=');
      std::string key;
      if (eq != std::string::npos && is_identifier(text::trim(std::string_view(a).substr(0, eq)))) {
        key = text::trim(std::string_view(a).substr(0, eq));
        call.params.emplace_back(key, canonical_value(std::string_view(a).substr(eq + 1)));
      } else {
        call.params.emplace_back("#" + std::to_string(positional++), canonical_value(a));
      }
    }
  }
  std::sort(call.params.begin(), call.params.end());
  return call;
}

bool tool_calls_match(const ToolCall& predicted, const ToolCall& gold,
                      const ToolIgnoreList& ignore) {
  if (predicted.name != gold.name) return false;
  const std::set<std::string>* skip = nullptr;
  if (auto it = ignore.find(gold.name); it != ignore.end()) skip = &it->second;
  auto key_params = [&](const ToolCall& c) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& p : c.params) {
      if (!skip || !skip->count(p.first)) out.push_back(p);
    }
    return out;  // already sorted
  };
  return key_params(predicted) == key_params(gold);
}

bool verify_action(std::string_view predicted, std::string_view gold, ActionDomain domain,
                   gateway::JudgeEndpoint* judge, const ToolIgnoreList& ignore) {
  switch (domain) {
    case ActionDomain::kTool: {
      const ToolCall g = parse_tool_call(gold);
      ToolCall p;
      try {
        p = parse_tool_call(predicted);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kUnparseableToolCall) return false;
        throw;
      }
      return tool_calls_match(p, g, ignore);
    }
    case ActionDomain::kWeb:
      return text::collapse_whitespace(predicted) == text::collapse_whitespace(gold);
    case ActionDomain::kSearch:
    case ActionDomain::kMessage:
      if (!judge) throw std::invalid_argument("verify_action: judge required for this domain");
      return gateway::judge_equivalence(predicted, gold, domain, *judge).equivalent;
  }
  return false;
}

}  // namespace ares::pipeline

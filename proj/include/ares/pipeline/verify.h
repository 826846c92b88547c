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

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ares/core/types.h"
#include "ares/gateway/endpoint.h"

namespace ares::pipeline {

// A tool call reduced to its name and its parameters as (key, canonical
// JSON value) pairs, sorted.
struct ToolCall {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;

  friend bool operator==(const ToolCall&, const ToolCall&) = default;
};

// Accepts {"name": ..., "arguments": {...}} (arguments may also be a JSON
// string, or named "kwargs"/"parameters") and name(k=v, ...). Positional
// arguments are keyed "#0", "#1", ... Throws ErrorCode::kUnparseableToolCall.
ToolCall parse_tool_call(std::string_view text);

// Per tool name, parameters that do not count as key parameters.
using ToolIgnoreList = std::map<std::string, std::set<std::string>, std::less<>>;

bool tool_calls_match(const ToolCall& predicted, const ToolCall& gold,
                      const ToolIgnoreList& ignore = {});

// Functional equivalence of a predicted action against the gold action.
//   tool: same name and same key-parameter multiset
//   web: equal after trimming and collapsing whitespace runs
//   search, message: the judge decides
// An unparseable gold call throws kUnparseableToolCall; an unparseable
// prediction is simply wrong. A judge is required for search and message.
bool verify_action(std::string_view predicted, std::string_view gold, ActionDomain domain,
                   gateway::JudgeEndpoint* judge, const ToolIgnoreList& ignore = {});

}  // namespace ares::pipeline

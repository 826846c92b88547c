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

#include "ares/routing/router_output.h"

#include "ares/core/errors.h"
#include "ares/core/text.h"

namespace ares::routing {
namespace {

constexpr std::string_view kOpen = "<think>";
constexpr std::string_view kClose = "</think>";

std::size_t count_of(std::string_view haystack, std::string_view needle) {
  std::size_t n = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

[[noreturn]] void violation(std::string_view why, std::string_view text) {
  std::string shown(text.substr(0, 60));
  throw Error(ErrorCode::kFormatViolation,
              std::string(why) + " in router output '" + shown + "'");
}

}  // namespace

ParsedRouterOutput parse_router_output(std::string_view text) {
  const std::size_t opens = count_of(text, kOpen);
  const std::size_t closes = count_of(text, kClose);
  ParsedRouterOutput out;
  std::string remaining;
  if (opens == 0 && closes == 0) {
    remaining = std::string(text);
  } else {
    if (opens != 1 || closes != 1) violation("expected at most one think block", text);
    const std::size_t open = text.find(kOpen);
    const std::size_t close = text.find(kClose);
    if (close < open) violation("think block closed before it opened", text);
    if (!text::trim(text.substr(0, open)).empty()) violation("label before think block", text);
    out.rationale = std::string(text.substr(open + kOpen.size(), close - open - kOpen.size()));
    remaining = std::string(text.substr(close + kClose.size()));
  }
  const std::string label = text::to_lower(text::trim(remaining));
  auto effort = try_parse_effort(label);
  if (!effort) violation("expected exactly one of low|medium|high", text);
  out.effort = *effort;
  return out;
}

std::string render_router_output(std::string_view rationale, EffortLevel effort) {
  if (rationale.empty()) return std::string(to_string(effort));
  std::string out;
  out.append(kOpen).append(rationale).append(kClose).append("\n").append(to_string(effort));
  return out;
}

}  // namespace ares::routing

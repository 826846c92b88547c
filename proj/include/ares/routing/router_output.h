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

#include <string>
#include <string_view>

#include "ares/core/effort.h"

namespace ares::routing {

struct ParsedRouterOutput {
  std::string rationale;
  EffortLevel effort = EffortLevel::kHigh;

  friend bool operator==(const ParsedRouterOutput&, const ParsedRouterOutput&) = default;
};

// Accepts an optional single <think>...</think> block plus exactly one
// effort word (any case, surrounding whitespace ignored). Everything else
// throws ErrorCode::kFormatViolation.
ParsedRouterOutput parse_router_output(std::string_view text);

// "<think>r</think>\n<label>", or the bare label when r is empty.
std::string render_router_output(std::string_view rationale, EffortLevel effort);

}  // namespace ares::routing

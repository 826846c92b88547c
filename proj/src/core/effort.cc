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

#include "ares/core/effort.h"

#include <string>

#include "ares/core/errors.h"

namespace ares {

std::string_view to_string(EffortLevel e) {
  switch (e) {
    case EffortLevel::kLow: return "low";
    case EffortLevel::kMedium: return "medium";
    case EffortLevel::kHigh: return "high";
  }
  return "low";
}

std::optional<EffortLevel> try_parse_effort(std::string_view text) {
  for (EffortLevel e : kAllEfforts) {
    if (text == to_string(e)) return e;
  }
  return std::nullopt;
}

EffortLevel parse_effort(std::string_view text) {
  if (auto e = try_parse_effort(text)) return *e;
  throw Error(ErrorCode::kParse,
              "unknown effort level '" + std::string(text) +
                  "' (expected low, medium or high)");
}

}  // namespace ares

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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace ares {

// Discrete reasoning-effort space. The enumerator order is the cost order.
enum class EffortLevel : std::uint8_t { kLow = 0, kMedium = 1, kHigh = 2 };

inline constexpr std::size_t kNumEfforts = 3;
inline constexpr std::array<EffortLevel, kNumEfforts> kAllEfforts{
    EffortLevel::kLow, EffortLevel::kMedium, EffortLevel::kHigh};

template <typename T>
using PerEffort = std::array<T, kNumEfforts>;

constexpr std::size_t index_of(EffortLevel e) {
  return static_cast<std::size_t>(e);
}

// Lowercase wire label: "low", "medium" or "high".
std::string_view to_string(EffortLevel e);

// Exact lowercase match only; anything else throws ErrorCode::kParse.
EffortLevel parse_effort(std::string_view text);
std::optional<EffortLevel> try_parse_effort(std::string_view text);

}  // namespace ares

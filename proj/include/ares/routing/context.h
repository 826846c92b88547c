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

#include <span>
#include <string>
#include <string_view>

#include "ares/core/types.h"

namespace ares::routing {

// Serializes the router/agent input for turn t from the objective, the
// turns 1..t-1 and the current observation o_t:
//
//   OBJECTIVE:
//   <goal>
//
//   INTERACTION HISTORY:
//   Step 0:
//   REASON: <reasoning of turn 1>
//   ACTION: <action of turn 1>
//   OBSERVATION: <observation of turn 2>
//   ...
//
// Each history block closes with the observation its action produced, so
// the last block carries o_t. With no history, o_t (if any) follows the
// header as a bare "OBSERVATION:" line.
std::string serialize_context(std::string_view goal, std::span<const Turn> history,
                              std::string_view current_observation);

}  // namespace ares::routing

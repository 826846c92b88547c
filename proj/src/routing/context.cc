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

#include "ares/routing/context.h"

namespace ares::routing {

std::string serialize_context(std::string_view goal, std::span<const Turn> history,
                              std::string_view current_observation) {
  std::string out;
  out.append("OBJECTIVE:\n").append(goal).append("\n\nINTERACTION HISTORY:\n");
  if (history.empty()) {
    if (!current_observation.empty()) {
      out.append("OBSERVATION: ").append(current_observation).append("\n");
    }
    return out;
  }
  for (std::size_t i = 0; i < history.size(); ++i) {
    const Turn& turn = history[i];
    const std::string_view next_obs =
        i + 1 < history.size() ? std::string_view(history[i + 1].observation)
                               : current_observation;
    out.append("Step ").append(std::to_string(i)).append(":\n");
    out.append("REASON: ").append(turn.reasoning).append("\n");
    out.append("ACTION: ").append(turn.action).append("\n");
    out.append("OBSERVATION: ").append(next_obs).append("\n");
  }
  return out;
}

}  // namespace ares::routing

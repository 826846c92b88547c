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

#include <cstdint>

#include "ares/gateway/endpoint.h"
#include "ares/rl/reward.h"
#include "ares/routing/episode.h"
#include "ares/routing/policy.h"

namespace ares::rl {

// One router-in-the-loop episode. Environment and endpoint failures are
// rethrown as ErrorCode::kInfrastructure: such rollouts are not task
// failures and must be left out of training pools. Policy configuration
// errors (kOracleMiss, kConfigInvalid) propagate unchanged.
RolloutRecord rollout(const routing::TaskSpec& task, routing::Environment& env,
                      const routing::Policy& policy, gateway::AgentEndpoint& agent,
                      const routing::EpisodeOptions& options);

}  // namespace ares::rl

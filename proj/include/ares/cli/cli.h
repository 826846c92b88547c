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

#include <ostream>
#include <string>
#include <vector>

namespace ares::cli {

// Exit statuses of the `ares` tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitStageError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitMissingInput = 4;

// Canonical artifact names inside the --out run directory.
namespace files {
inline constexpr const char* kTasks = "tasks.jsonl";
inline constexpr const char* kReferences = "references.jsonl";
inline constexpr const char* kLabels = "labels.jsonl";
inline constexpr const char* kRationales = "rationales.jsonl";
inline constexpr const char* kSft = "sft.jsonl";
inline constexpr const char* kRollouts = "rollouts.jsonl";
inline constexpr const char* kRewards = "rewards.jsonl";
inline constexpr const char* kRlRecords = "rl_records.jsonl";
inline constexpr const char* kFilter = "filter.jsonl";
inline constexpr const char* kReportText = "report.txt";
inline constexpr const char* kReportJson = "report.json";
}  // namespace files

// Entry point of the `ares` tool. Prints one summary line per stage on
// `out` and categorized errors on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ares::cli

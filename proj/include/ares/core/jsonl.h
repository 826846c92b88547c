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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ares {

inline constexpr const char* kToolName = "ares";
inline constexpr const char* kToolVersion = "0.3.0";

// First line of every artifact file: enough to reproduce it.
struct Manifest {
  std::string stage;
  std::string config_hash;
  std::uint64_t seed = 0;
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_line() const;
  static std::optional<Manifest> from_line(const nlohmann::json& line);
};

struct JsonlFile {
  std::optional<Manifest> manifest;
  std::vector<nlohmann::json> rows;
};

// Rows are written one compact object per line after the manifest line.
// Throws ErrorCode::kIo on failure.
void write_jsonl(const std::filesystem::path& path, const Manifest& manifest,
                 const std::vector<nlohmann::json>& rows);

// Throws kMissingInput when absent and kParse (with line number) on bad rows.
JsonlFile read_jsonl(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace ares

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

#include "ares/core/jsonl.h"

#include <fstream>

#include "ares/core/errors.h"
#include "ares/core/text.h"

namespace ares {

nlohmann::json Manifest::to_line() const {
  nlohmann::json m{{"tool", kToolName},
                   {"version", kToolVersion},
                   {"stage", stage},
                   {"config_hash", config_hash},
                   {"seed", seed}};
  if (!extra.empty()) m["params"] = extra;
  return nlohmann::json{{"manifest", m}};
}

std::optional<Manifest> Manifest::from_line(const nlohmann::json& line) {
  if (!line.is_object() || line.size() != 1 || !line.contains("manifest")) {
    return std::nullopt;
  }
  const auto& m = line.at("manifest");
  Manifest out;
  out.stage = m.value("stage", std::string{});
  out.config_hash = m.value("config_hash", std::string{});
  out.seed = m.value("seed", std::uint64_t{0});
  out.extra = m.value("params", nlohmann::json::object());
  return out;
}

void write_jsonl(const std::filesystem::path& path, const Manifest& manifest,
                 const std::vector<nlohmann::json>& rows) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << manifest.to_line().dump() << '\n';
  for (const auto& row : rows) out << row.dump() << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

JsonlFile read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingInput, "cannot read " + path.string());
  JsonlFile file;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kParse, path.string() + ":" + std::to_string(line_no) +
                                         ": " + e.what());
    }
    if (line_no == 1) {
      if (auto m = Manifest::from_line(row)) {
        file.manifest = std::move(m);
        continue;
      }
    }
    file.rows.push_back(std::move(row));
  }
  return file;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace ares

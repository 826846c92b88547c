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

#include "ares/gateway/prompts.h"

#include <fstream>
#include <sstream>

#include "ares/core/errors.h"

namespace ares::gateway {

// Defined in the generated prompts_builtin.cc.
std::vector<std::pair<std::string, std::string>> builtin_prompt_texts();

namespace {

std::string strip_final_newline(std::string s) {
  if (!s.empty() && s.back() == '\n') s.pop_back();
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

PromptRegistry PromptRegistry::builtin() {
  PromptRegistry reg;
  for (auto& [id, text] : builtin_prompt_texts()) {
    reg.set(id, strip_final_newline(text));
  }
  return reg;
}

void PromptRegistry::load_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kMissingInput, "prompt directory not found: " + dir.string());
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    set(entry.path().stem().string(), strip_final_newline(ss.str()));
  }
}

void PromptRegistry::set(std::string id, std::string text) {
  templates_[std::move(id)] = std::move(text);
}

bool PromptRegistry::contains(std::string_view id) const {
  return templates_.find(id) != templates_.end();
}

const std::string& PromptRegistry::get(std::string_view id) const {
  auto it = templates_.find(id);
  if (it == templates_.end()) {
    throw Error(ErrorCode::kTemplateMissing, "no prompt template '" + std::string(id) + "'");
  }
  return it->second;
}

std::string PromptRegistry::render(std::string_view id, const Vars& vars) const {
  return render_template(get(id), vars);
}

std::vector<std::string> PromptRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : templates_) out.push_back(id);
  return out;
}

std::string render_template(std::string_view tmpl, const PromptRegistry::Vars& vars) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const std::size_t open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    const std::size_t close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, open - pos));
    const std::string_view name = tmpl.substr(open + 2, close - open - 2);
    auto it = vars.find(name);
    if (it == vars.end()) {
      throw Error(ErrorCode::kTemplateMissing,
                  "no value for placeholder '{{" + std::string(name) + "}}'");
    }
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

}  // namespace ares::gateway

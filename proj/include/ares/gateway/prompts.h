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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ares::gateway {

// Named text templates with `{{placeholder}}` slots. Built-in templates are
// compiled in from prompts/; a directory can override them at runtime.
class PromptRegistry {
 public:
  using Vars = std::map<std::string, std::string, std::less<>>;

  // Registry holding the compiled-in templates.
  static PromptRegistry builtin();

  // Overrides (or adds) every `<id>.txt` found in `dir`.
  void load_dir(const std::filesystem::path& dir);
  void set(std::string id, std::string text);

  bool contains(std::string_view id) const;
  // Throws ErrorCode::kTemplateMissing.
  const std::string& get(std::string_view id) const;

  // Substitutes every placeholder in one pass; substituted values are not
  // rescanned. A placeholder without a value throws kTemplateMissing.
  std::string render(std::string_view id, const Vars& vars = {}) const;

  std::vector<std::string> ids() const;

 private:
  std::map<std::string, std::string, std::less<>> templates_;
};

std::string render_template(std::string_view tmpl, const PromptRegistry::Vars& vars);

namespace prompt_id {
inline constexpr std::string_view kRouter = "router";
inline constexpr std::string_view kEvaluator = "evaluator";
inline constexpr std::string_view kRationale = "rationale";
inline constexpr std::string_view kRationaleUser = "rationale_user";
inline constexpr std::string_view kRationaleReask = "rationale_reask";
inline constexpr std::string_view kSftSystem = "sft_system";
inline constexpr std::string_view kAgent = "agent";
inline constexpr std::string_view kJudgeUser = "judge_user";
}  // namespace prompt_id

}  // namespace ares::gateway

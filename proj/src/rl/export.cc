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

#include "ares/rl/export.h"

#include "ares/routing/context.h"

namespace ares::rl {

nlohmann::json to_json(const TrainerMeta& m) {
  return nlohmann::json{{"kl_coef", m.kl_coef},
                        {"learning_rate", m.learning_rate},
                        {"epochs", m.epochs},
                        {"batch_size", m.batch_size},
                        {"group_size", m.group_size}};
}

RlRecord make_rl_record(const std::string& prompt_id, int group_index, const RolloutRecord& rollout,
                        const RewardBreakdown& reward, double advantage) {
  RlRecord rec;
  rec.prompt_id = prompt_id;
  rec.group_index = group_index;
  rec.reward = reward;
  rec.advantage = advantage;
  const auto& t = rollout.trajectory;
  std::size_t d = 0;
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    if (!t.turns[i].effort) continue;
    rec.context.push_back(routing::serialize_context(
        t.goal, std::span<const Turn>(t.turns.data(), i), t.turns[i].observation));
    rec.rationale.push_back(d < rollout.decisions.size() ? rollout.decisions[d].rationale
                                                         : std::string{});
    rec.effort_sequence.push_back(*t.turns[i].effort);
    ++d;
  }
  return rec;
}

std::size_t export_rl_records(std::span<const RlRecord> records, const std::filesystem::path& path,
                              const Manifest& manifest, const TrainerMeta& meta) {
  Manifest m = manifest;
  m.extra["trainer"] = to_json(meta);
  std::vector<nlohmann::json> rows(records.begin(), records.end());
  write_jsonl(path, m, rows);
  return rows.size();
}

std::vector<RlRecord> read_rl_records(const std::filesystem::path& path) {
  const JsonlFile file = read_jsonl(path);
  std::vector<RlRecord> out;
  out.reserve(file.rows.size());
  for (const auto& row : file.rows) out.push_back(row.get<RlRecord>());
  return out;
}

void to_json(nlohmann::json& j, const RlRecord& r) {
  nlohmann::json efforts = nlohmann::json::array();
  for (EffortLevel e : r.effort_sequence) efforts.push_back(std::string(to_string(e)));
  j = nlohmann::json{{"prompt_id", r.prompt_id},   {"group_index", r.group_index},
                     {"context", r.context},       {"rationale", r.rationale},
                     {"effort_sequence", efforts}, {"reward", r.reward},
                     {"advantage", r.advantage}};
}

void from_json(const nlohmann::json& j, RlRecord& r) {
  r.prompt_id = j.at("prompt_id").get<std::string>();
  r.group_index = j.at("group_index").get<int>();
  r.context = j.at("context").get<std::vector<std::string>>();
  r.rationale = j.at("rationale").get<std::vector<std::string>>();
  r.effort_sequence.clear();
  for (const auto& e : j.at("effort_sequence")) r.effort_sequence.push_back(parse_effort(e.get<std::string>()));
  r.reward = j.at("reward").get<RewardBreakdown>();
  r.advantage = j.at("advantage").get<double>();
}

}  // namespace ares::rl

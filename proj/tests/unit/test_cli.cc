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

#include <gtest/gtest.h>

#include <sstream>

#include "ares/cli/cli.h"
#include "ares/cli/config.h"
#include "ares/core/errors.h"
#include "ares/core/jsonl.h"
#include "test_util.h"

namespace ares::cli {
namespace {

using testing::code_of;

std::string error_of(std::string_view text) {
  try {
    parse_config(text, "test.conf");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigInvalid);
    return e.what();
  }
  return "";
}

TEST(Config, MinimalConfigGivesDefaults) {
  const auto c = parse_config("# nothing but a comment\nseed = 1\n");
  EXPECT_EQ(c.annotation.trials_k, 3);
  EXPECT_EQ(c.annotation.threshold_m, 3);
  EXPECT_EQ(c.rl.rollouts_per_prompt, 8);
  EXPECT_EQ(c.rl.trainer.group_size, 16);
  EXPECT_DOUBLE_EQ(c.rl.filter.variance_quantile, 0.30);
  EXPECT_DOUBLE_EQ(c.reward.outcome_success, 5.0);
  EXPECT_EQ(c.reward.cost_per_effort, (PerEffort<double>{-0.2, -0.5, -1.0}));
  EXPECT_DOUBLE_EQ(c.reward.format_penalty, -1.0);
  EXPECT_EQ(to_json(c), to_json(RunConfig{}));
}

TEST(Config, OverridesAndComments) {
  const auto c = parse_config(
      "annotation.trials_k = 5   # more trials\n"
      "annotation.threshold_m = 4\n"
      "reward.normalized = false\n"
      "rl.variance_quantile = 0.5\n"
      "sim.capability.low = 0.25\n"
      "annotation.tool_ignore.book = note, comment\n"
      "endpoints.gpt.kind = http\n"
      "endpoints.gpt.base_url = http://localhost:9000\n"
      "roles.agent = gpt\n"
      "policy = random:7\n");
  EXPECT_EQ(c.annotation.trials_k, 5);
  EXPECT_EQ(c.annotation.threshold_m, 4);
  EXPECT_FALSE(c.reward.normalized);
  EXPECT_DOUBLE_EQ(c.rl.filter.variance_quantile, 0.5);
  EXPECT_DOUBLE_EQ(c.sim.profile.capability[0], 0.25);
  EXPECT_EQ(c.annotation.tool_ignore.at("book"), (std::set<std::string>{"comment", "note"}));
  EXPECT_EQ(c.roles.agent, "gpt");
  EXPECT_EQ(endpoint(c, "gpt").base_url, "http://localhost:9000");
  EXPECT_NE(config_hash(c), config_hash(RunConfig{}));
}

TEST(Config, ErrorsNameTheKey) {
  auto msg = error_of("annotation.trials_k = 3\nannotation.threshold_m = 4\n");
  EXPECT_NE(msg.find("threshold_m"), std::string::npos) << msg;
  msg = error_of("annotation.trails_k = 3\n");
  EXPECT_NE(msg.find("annotation.trails_k"), std::string::npos) << msg;
  EXPECT_NE(msg.find("test.conf:1"), std::string::npos) << msg;
  msg = error_of("seed = 1\nseed = 2\n");
  EXPECT_NE(msg.find("test.conf:2"), std::string::npos) << msg;
  msg = error_of("rl.variance_quantile = 1.5\n");
  EXPECT_NE(msg.find("variance_quantile"), std::string::npos) << msg;
  msg = error_of("roles.judge = nowhere\n");
  EXPECT_NE(msg.find("nowhere"), std::string::npos) << msg;
  msg = error_of("no equals sign here\n");
  EXPECT_NE(msg.find("test.conf:1"), std::string::npos) << msg;
}

TEST(Config, LoadRoundTrip) {
  testing::TempDir dir("cfg");
  EXPECT_EQ(code_of([&] { load_config(dir / "absent.conf"); }), ErrorCode::kMissingInput);
  write_text(dir / "a.conf", "annotation.fallback = discard\nsim.count = 4\n");
  const auto c = load_config(dir / "a.conf");
  EXPECT_EQ(c.annotation.fallback, pipeline::Fallback::kDiscard);
  EXPECT_EQ(c.sim.count, 4);
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, UnknownSubcommandIsUsageError) {
  const auto r = run({"bogus"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("unknown subcommand 'bogus'"), std::string::npos) << r.err;
  EXPECT_NE((r.err + r.out).find("Usage"), std::string::npos);
  EXPECT_EQ(run({}).code, kExitUsage);
}

TEST(Cli, MissingInputAndBadConfigExitCodes) {
  testing::TempDir dir("cli");
  const std::string out = (dir / "run").string();
  EXPECT_EQ(run({"--out", out, "annotate"}).code, kExitMissingInput);
  write_text(dir / "bad.conf", "annotation.threshold_m = 9\n");
  EXPECT_EQ(run({"--config", (dir / "bad.conf").string(), "--out", out, "simgen"}).code,
            kExitConfig);
  EXPECT_EQ(run({"--config", (dir / "none.conf").string(), "--out", out, "simgen"}).code,
            kExitMissingInput);
}

TEST(Cli, FullRunWritesArtifactsAndReport) {
  testing::TempDir dir("cli");
  write_text(dir / "small.conf", "sim.count = 6\nsim.length_max = 5\n");
  const std::vector<std::string> base{"--config", (dir / "small.conf").string(), "--out",
                                      (dir / "run").string(), "--jobs", "2"};
  auto with = [&](std::vector<std::string> tail) {
    auto a = base;
    a.insert(a.end(), tail.begin(), tail.end());
    return run(a);
  };
  for (const char* stage : {"simgen", "collect", "annotate", "rationalize", "emit-sft"}) {
    const auto r = with({stage});
    ASSERT_EQ(r.code, kExitOk) << stage << "\n" << r.err;
    EXPECT_EQ(r.out.rfind(std::string(stage) + ":", 0), 0u) << r.out;
  }
  ASSERT_EQ(with({"--policy", "oracle", "rollout"}).code, kExitOk);
  ASSERT_EQ(with({"reward"}).code, kExitOk);
  ASSERT_EQ(with({"filter"}).code, kExitOk);
  const auto rep = with({"--policy", "oracle", "report", "--baseline", "high"});
  ASSERT_EQ(rep.code, kExitOk) << rep.err;
  const auto text = testing::slurp(dir / "run" / files::kReportText);
  EXPECT_NE(text.find("d_Acc"), std::string::npos) << text;
  EXPECT_NE(text.find("d_token"), std::string::npos) << text;
  const auto report = nlohmann::json::parse(testing::slurp(dir / "run" / files::kReportJson));
  ASSERT_TRUE(report.contains("candidate")) << report.dump();
  EXPECT_EQ(report.at("candidate").at("name").get<std::string>().rfind("oracle:", 0), 0u);
  EXPECT_TRUE(report.at("tasks_restricted").get<bool>());
  EXPECT_LE(report.at("candidate").at("metrics").at("t_total").get<std::int64_t>(),
            report.at("baseline").at("metrics").at("t_total").get<std::int64_t>());

  const auto sft = read_jsonl(dir / "run" / files::kSft);
  ASSERT_TRUE(sft.manifest.has_value());
  const auto& cfg = sft.manifest->extra.at("config");
  EXPECT_EQ(cfg.at("annotation").at("trials_k"), 3);
  EXPECT_EQ(cfg.at("sim").at("count"), 6);
  EXPECT_EQ(sft.manifest->config_hash, config_hash(load_config(dir / "small.conf")));

  const auto rl = read_jsonl(dir / "run" / files::kRlRecords);
  EXPECT_EQ(rl.rows.size() % 16, 0u);
  EXPECT_FALSE(rl.rows.empty());
}

}  // namespace
}  // namespace ares::cli

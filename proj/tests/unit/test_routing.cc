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

#include <fstream>
#include <random>

#include "ares/core/errors.h"
#include "ares/core/jsonl.h"
#include "ares/gateway/stubs.h"
#include "ares/routing/context.h"
#include "ares/routing/episode.h"
#include "ares/routing/policy.h"
#include "ares/routing/router_output.h"
#include "ares/sim/sim.h"
#include "test_util.h"

namespace ares::routing {
namespace {

constexpr EffortLevel L = EffortLevel::kLow;
constexpr EffortLevel M = EffortLevel::kMedium;
constexpr EffortLevel H = EffortLevel::kHigh;

bool violates(std::string_view text) {
  try {
    parse_router_output(text);
    return false;
  } catch (const Error& e) {
    return e.code() == ErrorCode::kFormatViolation;
  }
}

TEST(RouterOutput, BareLabel) {
  EXPECT_EQ(parse_router_output("low"), (ParsedRouterOutput{"", L}));
  EXPECT_EQ(parse_router_output("  Medium \n"), (ParsedRouterOutput{"", M}));
}

TEST(RouterOutput, ThinkBlockThenLabel) {
  EXPECT_EQ(parse_router_output("<think>complex page, plan change</think>\nHIGH"),
            (ParsedRouterOutput{"complex page, plan change", H}));
}

TEST(RouterOutput, MalformedCorpus) {
  for (const char* bad : {"medium effort please", "", "   ", "banana", "low high", "lowhigh",
                          "<think>a</think>", "<think>a</think><think>b</think>low",
                          "</think>low<think>", "<think>unclosed low", "closed</think> low",
                          "high <think>after</think>", "<think>x</think>\nmed", "l o w",
                          "\"low\"", "low.", "Low!", "<think></think>", "HIGH\nHIGH"}) {
    EXPECT_TRUE(violates(bad)) << '"' << bad << '"';
  }
}

TEST(RouterOutput, RenderParseRoundTripFuzz) {
  std::mt19937_64 rng(1234);
  const std::string alphabet = "abcXYZ 019.,;:!?\n\t<>/think-_'\"()[]";
  for (int i = 0; i < 1000; ++i) {
    std::string r;
    const auto len = rng() % 60;
    for (std::size_t k = 0; k < len; ++k) r += alphabet[rng() % alphabet.size()];
    // Only well-formed rationales: no tag text inside.
    if (r.find("<think>") != std::string::npos || r.find("</think>") != std::string::npos) {
      --i;
      continue;
    }
    const EffortLevel e = kAllEfforts[rng() % 3];
    const auto parsed = parse_router_output(render_router_output(r, e));
    ASSERT_EQ(parsed.effort, e) << r;
    ASSERT_EQ(parsed.rationale, r);
  }
}

TEST(Context, EmptyHistoryHasNoStepBlocks) {
  const auto ctx = serialize_context("find x", {}, "");
  EXPECT_EQ(ctx, "OBJECTIVE:\nfind x\n\nINTERACTION HISTORY:\n");
  const auto with_obs = serialize_context("find x", {}, "home page");
  EXPECT_EQ(with_obs, "OBJECTIVE:\nfind x\n\nINTERACTION HISTORY:\nOBSERVATION: home page\n");
  EXPECT_EQ(with_obs.find("Step "), std::string::npos);
}

TEST(Context, BlocksCloseWithTheObservationTheyProduced) {
  std::vector<Turn> turns(2);
  turns[0].index = 1;
  turns[0].observation = "o1";
  turns[0].reasoning = "r1";
  turns[0].action = "a1";
  turns[1].index = 2;
  turns[1].observation = "o2";
  turns[1].reasoning = "r2";
  turns[1].action = "a2";
  EXPECT_EQ(serialize_context("g", turns, "o3"),
            "OBJECTIVE:\ng\n\nINTERACTION HISTORY:\n"
            "Step 0:\nREASON: r1\nACTION: a1\nOBSERVATION: o2\n"
            "Step 1:\nREASON: r2\nACTION: a2\nOBSERVATION: o3\n");
}

TEST(Context, TrainingExampleLayoutByteForByte) {
  const std::string dir = ARES_FIXTURE_DIR "/training_example/";
  const auto in = nlohmann::json::parse(testing::slurp(dir + "inputs.json"));
  const auto history = in.at("history").get<std::vector<Turn>>();
  EXPECT_EQ(serialize_context(in.at("goal").get<std::string>(), history,
                              in.at("observation").get<std::string>()),
            testing::slurp(dir + "user_prompt.txt"));
}

TEST(PolicySpec, ParseAndPrint) {
  for (const char* s : {"fixed:high", "fixed:low", "random:42", "llm:router", "oracle:labels.jsonl"}) {
    EXPECT_EQ(to_string(parse_policy_spec(s)), s);
  }
  for (const char* bad : {"fixed:med", "random:x", "random:", "oracle", "magic:1", ""}) {
    try {
      parse_policy_spec(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfigInvalid) << bad;
    }
  }
}

TEST(Policy, FixedIgnoresInput) {
  const FixedPolicy p(H);
  EXPECT_EQ(p.decide("anything", "obs", {"t", 1, 0}).effort, H);
  EXPECT_EQ(decide(p, "", "", {"t", 9, 3}).effort, H);
}

TEST(Policy, RandomIsUniformAndReproducible) {
  const RandomPolicy p(42);
  PerEffort<int> counts{};
  for (int i = 0; i < 30000; ++i) {
    ++counts[index_of(p.decide("", "", {"task-" + std::to_string(i / 10), i % 10 + 1, 0}).effort)];
  }
  for (int c : counts) EXPECT_NEAR(c / 30000.0, 1.0 / 3.0, 0.01);
  const RandomPolicy again(42);
  for (int i = 0; i < 100; ++i) {
    const StepKey k{"t" + std::to_string(i), i, static_cast<std::uint64_t>(i % 4)};
    EXPECT_EQ(p.decide("", "", k).effort, again.decide("x", "y", k).effort);
  }
}

TEST(Policy, OracleLooksUpLabels) {
  LabelTable t;
  t.set("t1", 3, M);
  const OraclePolicy p(t);
  EXPECT_EQ(p.decide("", "", {"t1", 3, 0}).effort, M);
  try {
    p.decide("", "", {"t1", 4, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOracleMiss);
  }
}

TEST(Policy, LabelTableFromFileSkipsUnlabeledRows) {
  testing::TempDir dir("labels");
  write_jsonl(dir / "labels.jsonl", Manifest{"annotate", "x", 0, {}},
              {{{"task_id", "a"}, {"step_index", 1}, {"label", "low"}},
               {{"task_id", "a"}, {"step_index", 2}, {"label", nullptr}}});
  const auto t = LabelTable::from_jsonl(dir / "labels.jsonl");
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(t.find("a", 1), L);
  EXPECT_FALSE(t.find("a", 2).has_value());
}

TEST(Policy, LlmParsesRouterReplyAndKeepsUsage) {
  auto router = std::make_shared<gateway::ScriptedRouter>(
      std::vector<std::string>{"<think>simple</think>\nlow"}, TokenUsage{7, 1});
  const LlmPolicy p(router);
  const auto d = p.decide("ctx", "obs", {"t", 1, 0});
  EXPECT_EQ(d.effort, L);
  EXPECT_EQ(d.rationale, "simple");
  EXPECT_EQ(d.router_usage, (TokenUsage{7, 1}));
}

sim::SimTask easy_task(int length) {
  sim::SimTask t;
  t.task_id = "task-easy";
  t.goal = "do it";
  for (int i = 0; i < length; ++i) {
    t.difficulties.push_back(0.0);
    t.gold_actions.push_back("click [" + std::to_string(i + 1) + "]");
  }
  return t;
}

TEST(Episode, FormatViolationTerminatesAsFailure) {
  const auto task = easy_task(3);
  sim::SimEnvironment env(task);
  sim::SimAgentEndpoint agent({task}, sim::SimAgentProfile{});
  auto router = std::make_shared<gateway::ScriptedRouter>(std::vector<std::string>{"low", "banana"});
  const LlmPolicy policy(router);
  const auto ep = run_episode(sim::task_spec_of(task), env, policy, agent, EpisodeOptions{10, 0, 0});
  EXPECT_EQ(ep.trajectory.terminated_by, TerminatedBy::kFormatViolation);
  EXPECT_FALSE(ep.trajectory.success);
  EXPECT_EQ(ep.trajectory.turns.size(), 2u);
  EXPECT_EQ(ep.format_violation_at, 2);
  EXPECT_FALSE(ep.trajectory.turns[1].effort.has_value());
  EXPECT_TRUE(ep.trajectory.turns[1].action.empty());
  EXPECT_EQ(ep.decisions.size(), 1u);
  EXPECT_NO_THROW(validate(ep.trajectory));
}

TEST(Episode, MaxStepsBoundary) {
  const auto task = easy_task(3);
  sim::SimEnvironment env(task);
  sim::SimAgentEndpoint agent({task}, sim::SimAgentProfile{});
  const FixedPolicy policy(H);
  const auto ep = run_episode(sim::task_spec_of(task), env, policy, agent, EpisodeOptions{1, 0, 0});
  EXPECT_EQ(ep.trajectory.terminated_by, TerminatedBy::kMaxSteps);
  EXPECT_FALSE(ep.trajectory.success);
  EXPECT_EQ(ep.trajectory.turns.size(), 1u);
}

TEST(Episode, AgentSeesSerializedContext) {
  const auto task = easy_task(2);
  sim::SimEnvironment env(task);
  class Recorder final : public gateway::AgentEndpoint {
   public:
    explicit Recorder(sim::SimAgentEndpoint& inner) : inner_(inner) {}
    gateway::CompletionResult complete(const gateway::CompletionRequest& r) override {
      requests.push_back(r);
      return inner_.complete(r);
    }
    std::vector<gateway::CompletionRequest> requests;

   private:
    sim::SimAgentEndpoint& inner_;
  };
  sim::SimAgentEndpoint sim_agent({task}, sim::SimAgentProfile{});
  Recorder agent(sim_agent);
  const auto ep = run_episode(sim::task_spec_of(task), env, FixedPolicy(L), agent, EpisodeOptions{5, 0, 9});
  ASSERT_TRUE(ep.trajectory.success);
  ASSERT_EQ(agent.requests.size(), 2u);
  EXPECT_EQ(agent.requests[1].history,
            serialize_context(task.goal, std::span<const Turn>(ep.trajectory.turns.data(), 1),
                              ep.trajectory.turns[1].observation));
  EXPECT_EQ(agent.requests[1].seed, agent_turn_seed(EpisodeOptions{5, 0, 9}, task.task_id, 2));
}

}  // namespace
}  // namespace ares::routing

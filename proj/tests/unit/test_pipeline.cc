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

#include <mutex>

#include "ares/core/errors.h"
#include "ares/core/jsonl.h"
#include "ares/gateway/prompts.h"
#include "ares/gateway/stubs.h"
#include "ares/pipeline/annotate.h"
#include "ares/pipeline/reference.h"
#include "ares/pipeline/sft.h"
#include "ares/pipeline/verify.h"
#include "ares/routing/context.h"
#include "ares/sim/sim.h"
#include "test_util.h"

namespace ares::pipeline {
namespace {

using testing::code_of;
constexpr EffortLevel L = EffortLevel::kLow;
constexpr EffortLevel M = EffortLevel::kMedium;
constexpr EffortLevel H = EffortLevel::kHigh;

// --- reference selection ---------------------------------------------------

Trajectory of_length(int n, bool success, std::int64_t tokens = 10) {
  Trajectory t = testing::make_trajectory("t", success, {}, tokens);
  for (int i = 1; i <= n; ++i) t.turns.push_back(testing::make_turn(i, H, tokens));
  return t;
}

TEST(Reference, FewestTurnsWins) {
  EXPECT_EQ(select_reference({of_length(7, true), of_length(5, true), of_length(5, true)}), 1u);
}

TEST(Reference, CostBreaksTurnTies) {
  EXPECT_EQ(select_reference({of_length(5, true, 30), of_length(5, true, 20), of_length(6, true, 1)}),
            1u);
}

TEST(Reference, FailuresAreIgnored) {
  EXPECT_EQ(select_reference({of_length(2, false), of_length(9, true)}), 1u);
  EXPECT_EQ(code_of([] { select_reference({of_length(2, false), of_length(3, false)}); }),
            ErrorCode::kNoSuccess);
  EXPECT_EQ(code_of([] { select_reference({}); }), ErrorCode::kNoSuccess);
}

sim::SimTask task_with(std::vector<double> d, std::string id = "task-x") {
  sim::SimTask t;
  t.task_id = std::move(id);
  t.goal = "reach the end";
  t.difficulties = std::move(d);
  for (std::size_t i = 0; i < t.difficulties.size(); ++i) {
    t.gold_actions.push_back("click [" + std::to_string(i + 1) + "]");
  }
  return t;
}

TEST(Reference, CollectRunsHighEffortSamples) {
  const auto task = task_with({0.2, 0.85, 0.4});
  sim::SimAgentEndpoint agent({task}, {});
  const auto ref = collect_reference(
      sim::task_spec_of(task), [&] { return std::make_unique<sim::SimEnvironment>(task); }, agent,
      {4, 30, 0});
  EXPECT_TRUE(ref.trajectory.success);
  EXPECT_EQ(ref.gold_actions, task.gold_actions);
  EXPECT_EQ(ref.sample_index, 0);
  for (const auto& t : ref.trajectory.turns) EXPECT_EQ(t.effort, H);
}

TEST(Reference, CollectWithoutSuccessThrows) {
  const auto task = task_with({0.2, 0.95});
  sim::SimAgentEndpoint agent({task}, {});
  EXPECT_EQ(code_of([&] {
              collect_reference(sim::task_spec_of(task),
                                [&] { return std::make_unique<sim::SimEnvironment>(task); }, agent,
                                {3, 30, 0});
            }),
            ErrorCode::kNoSuccess);
}

TEST(Reference, RowRoundTripAndImport) {
  const auto ref = make_reference(sim::to_gold_trajectory(task_with({0.1, 0.2})), 2);
  EXPECT_EQ(reference_from_row(to_row(ref)), ref);

  const nlohmann::json imported = {
      {"task_id", "ext-1"},
      {"goal", "buy milk"},
      {"turns",
       {{{"observation", "home"}, {"action", "click [3]"}},
        {{"observation", "cart"}, {"action", "stop [done]"}}}}};
  const auto r = reference_from_row(imported);
  EXPECT_TRUE(r.trajectory.success);
  EXPECT_EQ(r.gold_actions, (std::vector<std::string>{"click [3]", "stop [done]"}));
  EXPECT_EQ(r.trajectory.turns[1].index, 2);

  nlohmann::json bad = imported;
  bad["turns"][1]["action"] = "";
  EXPECT_EQ(code_of([&] { reference_from_row(bad); }), ErrorCode::kValidation);
}

// --- verification ----------------------------------------------------------

TEST(Verify, WebComparesNormalizedText) {
  EXPECT_TRUE(verify_action("  click   [12]\n", "click [12]", ActionDomain::kWeb, nullptr));
  EXPECT_FALSE(verify_action("click [13]", "click [12]", ActionDomain::kWeb, nullptr));
}

TEST(Verify, ToolCallParsingForms) {
  const auto a = parse_tool_call(R"({"name": "search", "arguments": {"query": "x", "limit": 5}})");
  const auto b = parse_tool_call(R"(search(limit=5, query='x'))");
  const auto c = parse_tool_call(R"({"name": "search", "arguments": "{\"limit\": 5, \"query\": \"x\"}"})");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a.name, "search");
  EXPECT_EQ(parse_tool_call("f(1, 'a, b', k=[1, 2])").params,
            (std::vector<std::pair<std::string, std::string>>{
                {"#0", "1"}, {"#1", "\"a, b\""}, {"k", "[1,2]"}}));
}

TEST(Verify, ToolKeyParameters) {
  const std::string gold = R"(book(flight="AA1", seat="12A", note="window please"))";
  EXPECT_TRUE(verify_action(R"(book(seat="12A", flight="AA1", note="window please"))", gold,
                            ActionDomain::kTool, nullptr));
  EXPECT_FALSE(verify_action(R"(book(flight="AA2", seat="12A", note="window please"))", gold,
                             ActionDomain::kTool, nullptr));
  EXPECT_FALSE(verify_action(R"(book(flight="AA1", seat="12A"))", gold, ActionDomain::kTool,
                             nullptr));
  const ToolIgnoreList ignore{{"book", {"note"}}};
  EXPECT_TRUE(verify_action(R"(book(flight="AA1", seat="12A", note="aisle"))", gold,
                            ActionDomain::kTool, nullptr, ignore));
  EXPECT_FALSE(verify_action("not a call", gold, ActionDomain::kTool, nullptr));
  EXPECT_EQ(code_of([&] { verify_action(gold, "((", ActionDomain::kTool, nullptr); }),
            ErrorCode::kUnparseableToolCall);
}

TEST(Verify, MessageGoesThroughTheJudge) {
  gateway::StubJudge judge;
  EXPECT_TRUE(verify_action("Your order  shipped.", "Your order shipped.", ActionDomain::kMessage,
                            &judge));
  EXPECT_FALSE(verify_action("It is lost.", "Your order shipped.", ActionDomain::kSearch, &judge));
  EXPECT_THROW(verify_action("a", "a", ActionDomain::kMessage, nullptr), std::invalid_argument);
}

// --- labeling --------------------------------------------------------------

StepLabel labeled(TrialMatrix m, int threshold, Fallback f) {
  StepLabel s;
  s.trial_matrix = std::move(m);
  assign_label(s, threshold, f);
  return s;
}

TEST(Label, AllSufficientGivesLow) {
  const auto s = labeled({{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}}, 3, Fallback::kDiscard);
  EXPECT_EQ(s.sufficiency_set, (std::vector<EffortLevel>{L, M, H}));
  EXPECT_EQ(s.label, L);
  EXPECT_FALSE(s.via_fallback);
}

TEST(Label, MinimumOfSufficiencySet) {
  const auto s = labeled({{{1, 0, 0}, {1, 1, 1}, {1, 1, 1}}}, 3, Fallback::kDiscard);
  EXPECT_EQ(s.sufficiency_set, (std::vector<EffortLevel>{M, H}));
  EXPECT_EQ(s.label, M);
}

TEST(Label, FallbackPicksMostAccurateLowestLevel) {
  const TrialMatrix m{{{1, 0, 0}, {1, 1, 0}, {0, 1, 1}}};
  const auto s = labeled(m, 3, Fallback::kLowestHighestAccuracy);
  EXPECT_TRUE(s.sufficiency_set.empty());
  EXPECT_EQ(s.label, M);
  EXPECT_TRUE(s.via_fallback);
  EXPECT_FALSE(s.discarded);

  const auto d = labeled(m, 3, Fallback::kDiscard);
  EXPECT_FALSE(d.label.has_value());
  EXPECT_TRUE(d.discarded);
}

TEST(Label, ThresholdBelowK) {
  const auto s = labeled({{{1, 0, 1}, {1, 1, 0}, {1, 1, 1}}}, 2, Fallback::kDiscard);
  EXPECT_EQ(s.sufficiency_set, (std::vector<EffortLevel>{L, M, H}));
  EXPECT_EQ(s.label, L);
}

TEST(Label, ConfigValidation) {
  AnnotationConfig c;
  EXPECT_NO_THROW(validate(c));
  c.threshold_m = 4;
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::kConfigInvalid);
  c.threshold_m = 0;
  EXPECT_EQ(code_of([&] { validate(c); }), ErrorCode::kConfigInvalid);
  EXPECT_EQ(parse_fallback("discard"), Fallback::kDiscard);
  EXPECT_EQ(code_of([] { parse_fallback("coinflip"); }), ErrorCode::kConfigInvalid);
}

ReferenceTrajectory gold_reference(const sim::SimTask& t) {
  return make_reference(sim::to_gold_trajectory(t), 0);
}

std::vector<std::optional<EffortLevel>> labels_of(const std::vector<StepLabel>& ls) {
  std::vector<std::optional<EffortLevel>> out;
  for (const auto& l : ls) out.push_back(l.label);
  return out;
}

TEST(Annotate, DeterministicSimLabelsAreMinimumEffort) {
  const auto task = task_with({0.1, 0.5, 0.8});
  sim::SimAgentEndpoint agent({task}, {});
  const auto labels = annotate_trajectory(gold_reference(task), {}, agent, nullptr);
  EXPECT_EQ(labels_of(labels), (std::vector<std::optional<EffortLevel>>{L, M, H}));
  EXPECT_EQ(labels[1].trial_matrix[index_of(L)], (std::vector<bool>{false, false, false}));
  EXPECT_EQ(labels[1].trial_matrix[index_of(M)], (std::vector<bool>{true, true, true}));
  EXPECT_EQ(labels[1].responses_by_effort.size(), 3u);
}

TEST(Annotate, SingleStepTrajectory) {
  const auto task = task_with({0.55});
  sim::SimAgentEndpoint agent({task}, {});
  const auto labels = annotate_trajectory(gold_reference(task), {}, agent, nullptr);
  ASSERT_EQ(labels.size(), 1u);
  EXPECT_EQ(labels[0].label, M);
  EXPECT_EQ(labels[0].step_index, 1);
}

TEST(Annotate, UnsolvableStepFallsBackOrDiscards) {
  const auto task = task_with({0.95, 0.97});
  sim::SimAgentEndpoint agent({task}, {});
  AnnotationConfig discard;
  discard.fallback = Fallback::kDiscard;
  for (const auto& l : annotate_trajectory(gold_reference(task), discard, agent, nullptr)) {
    EXPECT_TRUE(l.discarded);
    EXPECT_FALSE(l.label.has_value());
  }
  for (const auto& l : annotate_trajectory(gold_reference(task), {}, agent, nullptr)) {
    EXPECT_TRUE(l.via_fallback);
    EXPECT_EQ(l.label, L);  // all zero hits: lowest level
  }
}

TEST(Annotate, SufficiencySetsAreUpwardClosedUnderMonotoneCapability) {
  const auto tasks = sim::generate_tasks(9, 20, {2, 5}, {});
  sim::SimAgentEndpoint det(tasks, {});
  for (const auto& t : tasks) {
    for (const auto& l : annotate_trajectory(gold_reference(t), {}, det, nullptr)) {
      if (l.sufficiency_set.empty()) continue;
      const auto lo = index_of(l.sufficiency_set.front());
      EXPECT_EQ(l.sufficiency_set.size(), 3 - lo) << t.task_id << " step " << l.step_index;
    }
  }
}

// Wraps an agent and records every request.
class Recording final : public gateway::AgentEndpoint {
 public:
  explicit Recording(gateway::AgentEndpoint& inner, int fail_step = 0)
      : inner_(inner), fail_step_(fail_step) {}
  gateway::CompletionResult complete(const gateway::CompletionRequest& r) override {
    {
      std::lock_guard lock(mu_);
      requests.push_back(r);
    }
    if (fail_step_ > 0 && r.observation.find(" step " + std::to_string(fail_step_) + "/") !=
                              std::string::npos) {
      throw Error(ErrorCode::kTimeout, "agent timed out");
    }
    return inner_.complete(r);
  }
  std::vector<gateway::CompletionRequest> requests;

 private:
  gateway::AgentEndpoint& inner_;
  int fail_step_;
  std::mutex mu_;
};

TEST(Annotate, TeacherForcedPrefixAndTrialSeeds) {
  const auto task = task_with({0.95, 0.1, 0.1});
  sim::SimAgentEndpoint sim_agent({task}, {});
  Recording agent(sim_agent);
  AnnotationConfig c;
  c.seed = 77;
  const auto ref = gold_reference(task);
  annotate_trajectory(ref, c, agent, nullptr);
  ASSERT_EQ(agent.requests.size(), 27u);
  std::set<std::uint64_t> seeds;
  for (const auto& r : agent.requests) {
    seeds.insert(*r.seed);
    if (r.observation == sim::sim_observation(task, 3)) {
      // The prefix is the recorded gold turns, not the failing low-effort
      // replies produced at step 1.
      EXPECT_EQ(r.history, routing::serialize_context(
                               task.goal, std::span<const Turn>(ref.trajectory.turns.data(), 2),
                               r.observation));
    }
  }
  EXPECT_EQ(seeds.size(), 27u);
  EXPECT_TRUE(seeds.count(trial_seed(77, task.task_id, 2, M, 1)));
}

TEST(Annotate, StepFailuresAreAggregated) {
  const auto task = task_with({0.1, 0.1, 0.1});
  sim::SimAgentEndpoint sim_agent({task}, {});
  Recording agent(sim_agent, 2);
  try {
    annotate_trajectory(gold_reference(task), {}, agent, nullptr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStepAnnotationFailed);
    EXPECT_NE(std::string(e.what()).find("1 of 3 steps failed"), std::string::npos) << e.what();
  }
}

TEST(Annotate, StepLabelJsonRoundTrip) {
  const auto task = task_with({0.1, 0.7});
  sim::SimAgentEndpoint agent({task}, {});
  for (const auto& l : annotate_trajectory(gold_reference(task), {}, agent, nullptr)) {
    nlohmann::json j = l;
    EXPECT_EQ(j.get<StepLabel>(), l);
  }
}

// --- SFT ---------------------------------------------------------------------

TEST(Sft, EmptyHistoryExample) {
  const auto prompts = gateway::PromptRegistry::builtin();
  const auto e = build_sft_example({}, "landing page", "find x", L, "Simple page.", prompts);
  EXPECT_EQ(e.user_prompt, "OBJECTIVE:\nfind x\n\nINTERACTION HISTORY:\nOBSERVATION: landing page\n");
  EXPECT_EQ(e.system_prompt, prompts.get(gateway::prompt_id::kSftSystem));
  EXPECT_EQ(e.target(), "Simple page.\nlow");
}

TEST(Sft, TrainingExampleByteForByte) {
  const std::string dir = ARES_FIXTURE_DIR "/training_example/";
  const auto in = nlohmann::json::parse(testing::slurp(dir + "inputs.json"));
  const auto history = in.at("history").get<std::vector<Turn>>();
  const auto e = build_sft_example(history, in.at("observation").get<std::string>(),
                                   in.at("goal").get<std::string>(),
                                   parse_effort(in.at("label").get<std::string>()),
                                   in.at("rationale").get<std::string>(),
                                   gateway::PromptRegistry::builtin());
  EXPECT_EQ(e.system_prompt, testing::slurp(dir + "system_prompt.txt"));
  EXPECT_EQ(e.user_prompt, testing::slurp(dir + "user_prompt.txt"));
  EXPECT_TRUE(e.target().ends_with("\nhigh"));
  EXPECT_TRUE(e.target().starts_with(in.at("rationale").get<std::string>()));
}

SftExample example(EffortLevel l) {
  return SftExample{"sys", "user", "Because.", l};
}

TEST(Sft, EmitStatsAndRoundTrip) {
  testing::TempDir dir("sft");
  const std::vector<SftExample> xs{example(L), example(H), example(L)};
  const auto stats = emit_dataset(xs, dir / "sft.jsonl", Manifest{"emit-sft", "abc", 1, {}});
  EXPECT_EQ(stats, (DatasetStats{3, {2, 0, 1}}));
  const auto file = read_jsonl(dir / "sft.jsonl");
  ASSERT_TRUE(file.manifest.has_value());
  EXPECT_EQ(file.manifest->extra.at("stats"),
            (nlohmann::json{{"total", 3}, {"low", 2}, {"medium", 0}, {"high", 1}}));
  EXPECT_EQ(file.rows[1], (nlohmann::json{{"system", "sys"}, {"user", "user"},
                                          {"rationale", "Because."}, {"label", "high"}}));
  EXPECT_EQ(read_dataset(dir / "sft.jsonl"), xs);
}

TEST(Sft, RejectsEmptyInputAndBadRationales) {
  testing::TempDir dir("sft");
  EXPECT_EQ(code_of([&] { emit_dataset({}, dir / "a.jsonl", {}); }), ErrorCode::kEmptyInput);
  std::vector<SftExample> xs{example(L)};
  xs[0].rationale = "";
  EXPECT_EQ(code_of([&] { emit_dataset(xs, dir / "b.jsonl", {}); }), ErrorCode::kValidation);
  EXPECT_EQ(code_of([] { validate_rationale("A. B. C. D. E. F."); }), ErrorCode::kValidation);
  EXPECT_NO_THROW(validate_rationale("A. B. C. D. E."));
}

TEST(Sft, RationalizeAndBuildFromRecord) {
  const auto task = task_with({0.1, 0.5});
  const auto ref = gold_reference(task);
  sim::SimAgentEndpoint agent({task}, {});
  const auto labels = annotate_trajectory(ref, {}, agent, nullptr);
  gateway::StubTeacher teacher;
  const auto rec = rationalize_step(ref, labels[1], teacher);
  EXPECT_EQ(rec.label, M);
  EXPECT_EQ(rec.step_index, 2);
  EXPECT_EQ(rationale_from_row(to_row(rec)), rec);
  const auto prompts = gateway::PromptRegistry::builtin();
  const auto e = sft_example_for(ref, rec, prompts);
  EXPECT_EQ(e.user_prompt,
            routing::serialize_context(task.goal,
                                       std::span<const Turn>(ref.trajectory.turns.data(), 1),
                                       ref.trajectory.turns[1].observation));
  EXPECT_EQ(e.label, M);

  StepLabel unlabeled = labels[0];
  unlabeled.label.reset();
  EXPECT_EQ(code_of([&] { rationalize_step(ref, unlabeled, teacher); }), ErrorCode::kValidation);
}

}  // namespace
}  // namespace ares::pipeline

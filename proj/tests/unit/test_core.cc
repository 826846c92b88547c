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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "ares/core/effort.h"
#include "ares/core/errors.h"
#include "ares/core/hash.h"
#include "ares/core/jsonl.h"
#include "ares/core/metrics.h"
#include "ares/core/text.h"
#include "ares/core/types.h"
#include "ares/core/work_pool.h"
#include "test_util.h"

namespace ares {
namespace {

using testing::make_trajectory;
using testing::make_turn;
constexpr EffortLevel L = EffortLevel::kLow;
constexpr EffortLevel M = EffortLevel::kMedium;
constexpr EffortLevel H = EffortLevel::kHigh;

TEST(Effort, TotalOrderAndLabels) {
  EXPECT_LT(L, M);
  EXPECT_LT(M, H);
  EXPECT_EQ(to_string(L), "low");
  EXPECT_EQ(to_string(M), "medium");
  EXPECT_EQ(to_string(H), "high");
  for (EffortLevel e : kAllEfforts) EXPECT_EQ(parse_effort(to_string(e)), e);
}

TEST(Effort, ParsingRejectsOtherTokens) {
  for (const char* bad : {"", "med", "mid", "High", " low", "lowest", "none"}) {
    EXPECT_FALSE(try_parse_effort(bad).has_value()) << bad;
    try {
      parse_effort(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse);
    }
  }
}

TEST(StepCost, SumsReasoningAndActionTokens) {
  EXPECT_EQ(step_cost(make_turn(1, L, 0, 0)), 0);
  EXPECT_EQ(step_cost(make_turn(1, H, 600, 34)), 634);
  EXPECT_EQ(step_cost(make_turn(1, M, 100, 23)), 123);
}

TEST(Trajectory, ValidationInvariants) {
  auto ok = make_trajectory("t", true, {L, M});
  EXPECT_NO_THROW(validate(ok));

  auto empty = ok;
  empty.turns.clear();
  EXPECT_THROW(validate(empty), Error);

  auto bad_order = ok;
  bad_order.turns[1].index = 1;
  EXPECT_THROW(validate(bad_order), Error);

  auto bad_success = ok;
  bad_success.terminated_by = TerminatedBy::kMaxSteps;
  EXPECT_THROW(validate(bad_success), Error);

  auto negative = ok;
  negative.turns[0].usage.reasoning_tokens = -1;
  EXPECT_THROW(validate(negative), Error);

  auto action_without_effort = ok;
  action_without_effort.turns[0].effort.reset();
  EXPECT_THROW(validate(action_without_effort), Error);
}

TEST(Trajectory, JsonRoundTrip) {
  auto t = make_trajectory("task-7", true, {L, H});
  t.turns[1].router_usage = TokenUsage{5, 1};
  t.turns[1].domain = ActionDomain::kTool;
  t.domain = ActionDomain::kSearch;
  Turn violation;
  violation.index = 3;
  violation.observation = "o3";
  auto failed = t;
  failed.success = false;
  failed.terminated_by = TerminatedBy::kFormatViolation;
  failed.turns.push_back(violation);
  for (const auto& x : {t, failed}) {
    const nlohmann::json j = x;
    EXPECT_EQ(j.get<Trajectory>(), x);
  }
  const nlohmann::json j = failed;
  EXPECT_TRUE(j["turns"][2]["effort"].is_null());
}

TEST(Metrics, SingleTaskHandArithmetic) {
  Trajectory t = make_trajectory("a", true, {L, M, H});
  t.turns[0].usage = {100, 0};
  t.turns[1].usage = {150, 50};
  t.turns[2].usage = {300, 0};
  const std::vector<Trajectory> v{t};
  const auto r = aggregate_metrics(v);
  EXPECT_DOUBLE_EQ(r.accuracy, 1.0);
  EXPECT_EQ(r.t_total, 600);
  EXPECT_DOUBLE_EQ(r.t_task, 600.0);
  EXPECT_DOUBLE_EQ(r.t_step, 200.0);
  EXPECT_DOUBLE_EQ(r.avg_steps, 3.0);
}

TEST(Metrics, AccuracyOverMixedOutcomes) {
  const std::vector<Trajectory> v{make_trajectory("a", true, {L}), make_trajectory("b", false, {L})};
  EXPECT_DOUBLE_EQ(aggregate_metrics(v).accuracy, 0.5);
}

TEST(Metrics, FixedHighHistogram) {
  const std::vector<Trajectory> v{make_trajectory("a", true, {H, H, H}),
                                  make_trajectory("b", false, {H, H})};
  const auto r = aggregate_metrics(v);
  EXPECT_EQ(r.effort_histogram[index_of(H)], 5);
  EXPECT_EQ(r.effort_histogram[index_of(L)], 0);
  EXPECT_EQ(r.effort_histogram[index_of(M)], 0);
  for (const auto& [step, row] : r.per_step_index_histogram) EXPECT_DOUBLE_EQ(row[index_of(H)], 1.0);
}

TEST(Metrics, EmptyInputIsAnError) {
  try {
    aggregate_metrics(std::vector<Trajectory>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
}

TEST(Metrics, HistogramRowsSumToOneAndPermutationInvariant) {
  std::vector<Trajectory> v{make_trajectory("a", true, {L, M, H, L}),
                            make_trajectory("b", false, {H, M}),
                            make_trajectory("c", true, {M})};
  v[0].turns[1].action = "type [3] [x]";
  v[1].turns[0].action = "go_back";
  const auto r = aggregate_metrics(v);
  for (const auto& [k, row] : r.per_step_index_histogram) EXPECT_NEAR(row[0] + row[1] + row[2], 1.0, 1e-9);
  for (const auto& [k, row] : r.per_action_type_histogram) EXPECT_NEAR(row[0] + row[1] + row[2], 1.0, 1e-9);
  EXPECT_EQ(r.per_action_type_histogram.count("type"), 1u);
  EXPECT_EQ(r.per_action_type_histogram.count("go_back"), 1u);
  std::int64_t hist = 0;
  for (auto c : r.effort_histogram) hist += c;
  EXPECT_EQ(hist, r.total_steps);

  std::reverse(v.begin(), v.end());
  const nlohmann::json a = r, b = aggregate_metrics(v);
  EXPECT_EQ(a, b);
}

TEST(Metrics, FormatViolationTurnExcludedFromHistograms) {
  auto t = make_trajectory("a", false, {L});
  Turn v;
  v.index = 2;
  t.turns.push_back(v);
  t.terminated_by = TerminatedBy::kFormatViolation;
  const auto r = aggregate_metrics(std::vector<Trajectory>{t});
  EXPECT_EQ(r.total_steps, 2);
  EXPECT_EQ(r.effort_histogram[0] + r.effort_histogram[1] + r.effort_histogram[2], 1);
}

TEST(Metrics, TokenTotalsAreExactIntegers) {
  std::vector<Trajectory> v;
  for (int i = 0; i < 7; ++i) v.push_back(make_trajectory("t" + std::to_string(i), i % 2 == 0, {L, M, H}, 333 + i));
  const auto r = aggregate_metrics(v);
  std::int64_t sum = 0;
  for (const auto& t : v) sum += t.total_cost();
  EXPECT_EQ(r.t_total, sum);
  EXPECT_NEAR(r.t_step * static_cast<double>(r.total_steps), static_cast<double>(r.t_total), 1e-6);
}

TEST(Metrics, ScalarizedObjective) {
  MetricsReport r;
  r.accuracy = 0.5;
  EXPECT_DOUBLE_EQ(scalarized_objective(r, 0.0), 0.5);
  r.accuracy = 1.0;
  r.t_total = 1000;
  EXPECT_NEAR(scalarized_objective(r, 1e-4), 0.9, 1e-12);
  EXPECT_DOUBLE_EQ(scalarized_objective(r, 0.3), scalarized_objective(r, 0.3));
  EXPECT_THROW(scalarized_objective(r, -1.0), std::invalid_argument);
}

TEST(Metrics, CompareReports) {
  MetricsReport base, cand;
  const auto zero = compare_reports(base, base);
  EXPECT_EQ(zero.accuracy, 0.0);
  EXPECT_EQ(zero.t_total, 0);
  base.accuracy = 0.548;
  cand.accuracy = 0.350;
  base.t_total = 1007000;
  cand.t_total = 652000;
  const auto d = compare_reports(base, cand);
  EXPECT_NEAR(d.accuracy, -0.198, 1e-12);
  EXPECT_EQ(d.t_total, -355000);
}

TEST(Metrics, ComparisonTableHasDeltaColumns) {
  const std::vector<Trajectory> a{make_trajectory("a", true, {H, H})};
  const std::vector<Trajectory> b{make_trajectory("a", true, {L, L})};
  const auto text = render_comparison("high", aggregate_metrics(a), "oracle", aggregate_metrics(b));
  EXPECT_NE(text.find("d_Acc"), std::string::npos);
  EXPECT_NE(text.find("d_token"), std::string::npos);
  EXPECT_NE(text.find("oracle"), std::string::npos);
}

TEST(Metrics, JsonUsesDocumentedFieldNames) {
  const nlohmann::json j = aggregate_metrics(std::vector<Trajectory>{make_trajectory("a", true, {L})});
  for (const char* k : {"accuracy", "avg_steps", "t_total", "t_task", "t_step", "effort_histogram",
                        "per_step_index_histogram", "per_action_type_histogram"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_EQ(nlohmann::json(j.get<MetricsReport>()), j);
}

TEST(Text, SentenceSplitting) {
  EXPECT_EQ(text::split_sentences("One. Two? Three!").size(), 3u);
  EXPECT_EQ(text::split_sentences("Version 1.5 is out. Next").size(), 2u);
  EXPECT_EQ(text::split_sentences("   ").size(), 0u);
  EXPECT_EQ(text::split_sentences("Wait... what?!").size(), 2u);
}

TEST(Text, WhitespaceCollapse) {
  EXPECT_EQ(text::collapse_whitespace("  click  [1316]\t\n"), "click [1316]");
  EXPECT_EQ(text::first_token("  go_back now"), "go_back");
  EXPECT_EQ(action_type_of("click [3]"), "click");
}

TEST(Hash, StableValues) {
  // FNV-1a 64 reference values.
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
  EXPECT_EQ(SeedMixer(1).add("x").value(), SeedMixer(1).add("x").value());
  EXPECT_NE(SeedMixer(1).add("x").value(), SeedMixer(2).add("x").value());
  EXPECT_EQ(to_hex(255), "00000000000000ff");
  EXPECT_GE(to_unit_interval(~0ULL), 0.0);
  EXPECT_LT(to_unit_interval(~0ULL), 1.0);
}

TEST(Jsonl, ManifestAndRowsRoundTrip) {
  testing::TempDir dir("jsonl");
  Manifest m;
  m.stage = "test";
  m.config_hash = "abc";
  m.seed = 9;
  m.extra = {{"k", 3}};
  const std::vector<nlohmann::json> rows{{{"a", 1}}, {{"b", "x"}}};
  write_jsonl(dir / "f.jsonl", m, rows);
  const auto f = read_jsonl(dir / "f.jsonl");
  ASSERT_TRUE(f.manifest.has_value());
  EXPECT_EQ(f.manifest->stage, "test");
  EXPECT_EQ(f.manifest->seed, 9u);
  EXPECT_EQ(f.manifest->extra["k"], 3);
  EXPECT_EQ(f.rows, rows);
  const auto first_line = testing::slurp(dir / "f.jsonl").substr(0, 40);
  EXPECT_EQ(first_line.rfind("{\"manifest\":", 0), 0u);
}

TEST(Jsonl, MissingFileAndBadLine) {
  testing::TempDir dir("jsonl-bad");
  try {
    read_jsonl(dir / "absent.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingInput);
  }
  write_text(dir / "bad.jsonl", "{\"a\":1}\n{oops\n");
  try {
    read_jsonl(dir / "bad.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos);
  }
}

TEST(WorkPool, ResultsInIndexOrder) {
  const WorkPool pool(4);
  const auto out = pool.map(100, [](std::size_t i) {
    std::this_thread::sleep_for(std::chrono::microseconds((100 - i) * 10));
    return static_cast<int>(i * i);
  });
  ASSERT_EQ(out.size(), 100u);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
}

TEST(WorkPool, LowestFailingIndexWins) {
  const WorkPool pool(3);
  std::atomic<int> ran{0};
  try {
    pool.map(20, [&](std::size_t i) {
      ++ran;
      if (i == 7 || i == 3) throw std::runtime_error("item " + std::to_string(i));
      return 0;
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "item 3");
  }
  EXPECT_EQ(ran.load(), 20);
}

TEST(Errors, CategoryNamePrefixesMessage) {
  const Error e(ErrorCode::kOracleMiss, "x");
  EXPECT_EQ(std::string(e.what()), "OracleMiss: x");
  EXPECT_TRUE(is_retryable(ErrorCode::kTimeout));
  EXPECT_FALSE(is_retryable(ErrorCode::kFormatViolation));
}

}  // namespace
}  // namespace ares

// Copyright 2026 The dynfl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <sstream>

#include <gtest/gtest.h>

#include "dynfl/generators.hpp"
#include "dynfl/harness.hpp"
#include "dynfl/io.hpp"

namespace dynfl {
namespace {

TEST(RunSolve, BestIsTheCheapestTrial) {
  for (OpeningMode mode : {OpeningMode::kFixed, OpeningMode::kHourly}) {
    Instance inst = gen_random_walk(4, 4, 5, 0.2, 0.5, 0.3, 12, mode);
    SolveOptions opt;
    opt.trials = 9;
    opt.seed = 5;
    SolveOutcome out = run_solve(inst, opt, "walk");
    const TrialReport& r = out.report;
    ASSERT_EQ(r.trial_costs.size(), 9u);
    double lowest = std::min_element(r.trial_costs.begin(), r.trial_costs.end(),
                                     [](auto& a, auto& b) { return a.total < b.total; })->total;
    EXPECT_EQ(r.best.total, lowest);
    EXPECT_EQ(evaluate_cost(inst, out.best_solution).total, lowest);
    ASSERT_TRUE(r.success_fraction.has_value());
    EXPECT_GE(*r.success_fraction, 0);
    EXPECT_LE(*r.success_fraction, 1);
    EXPECT_EQ(r.threshold_draws.size(), mode == OpeningMode::kHourly ? 9u : 0u);
  }
}

TEST(RunSolve, ThreadCountDoesNotChangeTheReport) {
  Instance inst = gen_random_walk(4, 4, 5, 0.2, 0.5, 0.3, 13, OpeningMode::kHourly);
  SolveOptions opt;
  opt.trials = 12;
  opt.seed = 77;
  SolveOutcome one = run_solve(inst, opt, "x");
  opt.threads = 4;
  SolveOutcome four = run_solve(inst, opt, "x");
  EXPECT_EQ(report_to_json(one.report).dump(), report_to_json(four.report).dump());
  EXPECT_EQ(one.best_solution, four.best_solution);
}

TEST(RunSolve, ReportHasNoTimingsUnlessAsked) {
  Instance inst = gen_classroom(2, 1, 3);
  SolveOptions opt;
  opt.algorithm = Algorithm::kExact;
  auto doc = report_to_json(run_solve(inst, opt).report);
  EXPECT_FALSE(doc.contains("seconds"));
  opt.record_timings = true;
  doc = report_to_json(run_solve(inst, opt).report);
  EXPECT_TRUE(doc.contains("seconds"));
}

TEST(RunSolve, ExactOnSetCover) {
  Instance inst = gen_setcover_gadget({3, {{0, 1}, {1, 2}, {2}}}, 1);
  SolveOptions opt;
  opt.algorithm = Algorithm::kExact;
  SolveOutcome out = run_solve(inst, opt);
  EXPECT_EQ(out.report.best.total, 2);
  EXPECT_EQ(out.report.exact_optimum, 2.0);
  EXPECT_FALSE(out.report.lp_value.has_value());
}

TEST(RunSolve, StaticOnClassroom) {
  Instance inst = gen_classroom(5, 4, 10);
  SolveOptions opt;
  opt.algorithm = Algorithm::kStatic;
  opt.with_exact = true;
  SolveOutcome out = run_solve(inst, opt);
  EXPECT_EQ(out.report.best.switching, 9);
  EXPECT_EQ(out.report.exact_optimum, 6.0);
  EXPECT_EQ(out.report.static_cost, 14.0);
}

TEST(RunSolve, OversizedLpIsRefused) {
  Instance inst = gen_classroom(5, 4, 10);  // 21 + 2 * 10 * 441 columns
  SolveOptions opt;
  EXPECT_THROW(run_solve(inst, opt), LpTooLarge);
}

TEST(RunSolve, TableMentionsEveryTrial) {
  Instance inst = gen_random_walk(3, 3, 3, 0.2, 0.5, 0.3, 1);
  SolveOptions opt;
  opt.trials = 3;
  std::ostringstream os;
  print_report_table(os, run_solve(inst, opt, "w").report);
  std::string text = os.str();
  EXPECT_NE(text.find("0*"), std::string::npos);
  EXPECT_NE(text.find("\n2 "), std::string::npos);
}

TEST(CompareSolutions, ClassroomRatiosGrowWithHorizon) {
  double previous = 0;
  for (int T : {5, 10, 20}) {
    Instance inst = gen_classroom(5, 4, T);
    Solution opt = exact_fixed(inst).solution;
    Solution stat = static_baseline(inst).solution;
    CompareOptions co;
    co.with_lp = false;
    ComparisonReport rep = compare_solutions(inst, {{"exact", opt}, {"static", stat}}, co);
    ASSERT_EQ(rep.rows.size(), 2u);
    EXPECT_EQ(rep.rows[0].ratio_to_exact, 1.0);
    EXPECT_GT(*rep.rows[1].ratio_to_exact, previous);
    previous = *rep.rows[1].ratio_to_exact;
  }
  EXPECT_GE(previous, 2);
}

TEST(CompareSolutions, IdenticalSolutionsHaveRatioOne) {
  Instance inst = gen_random_walk(3, 3, 3, 0.2, 0.5, 0.3, 2);
  Solution s = exact_fixed(inst).solution;
  ComparisonReport rep = compare_solutions(inst, {{"a", s}, {"b", s}});
  EXPECT_EQ(rep.rows[1].ratio_to_first, 1);
  EXPECT_EQ(rep.rows[1].ratio_to_exact, 1.0);
  EXPECT_LE(*rep.lp_value, rep.rows[0].cost.total + 1e-6);
  auto doc = comparison_to_json(rep);
  EXPECT_EQ(doc["rows"].size(), 2u);
}

TEST(CompareSolutions, InfeasibleSolutionNamesItsLabel) {
  Instance inst = gen_classroom(2, 1, 2);
  Solution bad{OpeningMode::kFixed, {{0}}, {{0, 1, 0}, {0, 0, 0}}};
  try {
    compare_solutions(inst, {{"broken.json", bad}});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("broken.json"), std::string::npos);
  }
}

}  // namespace
}  // namespace dynfl

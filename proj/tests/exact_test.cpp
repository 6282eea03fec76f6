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

#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "dynfl/exact.hpp"
#include "dynfl/generators.hpp"
#include "oracles.hpp"

namespace dynfl {
namespace {

TEST(OptimalAssignment, SingleOpenFacilityIsForced) {
  std::mt19937_64 gen(1);
  Instance inst = oracle::random_instance(gen, 2, 3, 4, OpeningMode::kFixed);
  AssignmentResult r = optimal_assignment(inst, {{2}});
  double expected = 0;
  for (int t = 0; t < 4; ++t)
    for (int j = 0; j < 2; ++j) expected += inst.distance(t, 2, j);
  EXPECT_DOUBLE_EQ(r.cost(), expected);
  EXPECT_EQ(r.switching, 0);
}

TEST(OptimalAssignment, MatchesSequenceEnumeration) {
  std::mt19937_64 gen(2);
  for (int k = 0; k < 100; ++k) {
    int m = 1 + static_cast<int>(gen() % 3), T = 1 + static_cast<int>(gen() % 5);
    Instance inst = oracle::random_instance(gen, 1, m, T, OpeningMode::kFixed);
    OpenSets all{{}};
    for (int i = 0; i < m; ++i) all[0].push_back(i);
    AssignmentResult r = optimal_assignment(inst, all);
    EXPECT_EQ(r.cost(), oracle::enumerate_client(inst, all, 0)) << "case " << k;
    Solution s{OpeningMode::kFixed, all, r.assignment};
    CostBreakdown c = evaluate_cost(inst, s);
    EXPECT_EQ(c.distance, r.distance);
    EXPECT_EQ(c.switching, r.switching);
  }
}

TEST(OptimalAssignment, PerStepOpenSets) {
  std::mt19937_64 gen(3);
  for (int k = 0; k < 30; ++k) {
    Instance inst = oracle::random_instance(gen, 2, 3, 4, OpeningMode::kHourly);
    OpenSets open;
    for (int t = 0; t < 4; ++t) {
      std::vector<int> set;
      while (set.empty())
        for (int i = 0; i < 3; ++i)
          if (gen() % 2) set.push_back(i);
      open.push_back(set);
    }
    AssignmentResult r = optimal_assignment(inst, open);
    double expected = 0;
    for (int j = 0; j < 2; ++j) expected += oracle::enumerate_client(inst, open, j);
    EXPECT_EQ(r.cost(), expected);
  }
}

TEST(OptimalAssignment, FreeSwitchingPicksNearest) {
  std::mt19937_64 gen(4);
  Instance inst = oracle::random_instance(gen, 3, 3, 4, OpeningMode::kFixed, 1, 0);
  AssignmentResult r = optimal_assignment(inst, {{0, 1, 2}});
  for (int t = 0; t < 4; ++t)
    for (int j = 0; j < 3; ++j) {
      double best = oracle::kInf;
      for (int i = 0; i < 3; ++i) best = std::min(best, inst.distance(t, i, j));
      EXPECT_EQ(inst.distance(t, r.assignment[t][j], j), best);
    }
}

TEST(OptimalAssignment, EmptyOpenSetThrows) {
  std::mt19937_64 gen(5);
  Instance inst = oracle::random_instance(gen, 1, 2, 2, OpeningMode::kHourly);
  EXPECT_THROW(optimal_assignment(inst, {{0}, {}}), Error);
}

TEST(ExactFixed, TwoStepSingleFacility) {
  Instance inst(1, 1, 2, 5, 7, OpeningMode::kFixed, 100, {3, 4});
  ExactResult r = exact_fixed(inst);
  EXPECT_EQ(r.solution.open, (std::vector<std::vector<int>>{{0}}));
  EXPECT_DOUBLE_EQ(r.cost.total, 12);
}

TEST(ExactFixed, SetCoverGadget) {
  SetSystem sys{3, {{0, 1}, {1, 2}, {2}}};
  ExactResult r = exact_fixed(gen_setcover_gadget(sys, 1));
  EXPECT_DOUBLE_EQ(r.cost.total, 2);
  EXPECT_EQ(*oracle::min_set_cover(3, sys.sets), 2);
  std::vector<std::vector<int>> chosen;
  for (int i : r.solution.open[0]) chosen.push_back(sys.sets[i]);
  EXPECT_EQ(uncovered_elements({3, chosen}).size(), 0u);
}

TEST(ExactFixed, WholeUniverseCostsOneOpening) {
  ExactResult r = exact_fixed(gen_setcover_gadget({4, {{0, 1, 2, 3}}}, 2.5));
  EXPECT_DOUBLE_EQ(r.cost.total, 2.5);
}

TEST(ExactFixed, ClassroomKeepsTheTeacherInPlace) {
  for (int T : {4, 6}) {
    Instance inst = gen_classroom(2, 2, T, 0, 1000, 1, 1);
    ExactResult r = exact_fixed(inst);
    EXPECT_EQ(r.solution.open[0].size(), 3u);
    EXPECT_EQ(r.cost.switching, 0);
    EXPECT_DOUBLE_EQ(r.cost.total, 3);
  }
}

TEST(ExactFixed, MatchesEnumerationAndBeatsRandomSolutions) {
  std::mt19937_64 gen(6);
  for (int k = 0; k < 15; ++k) {
    Instance inst = oracle::random_instance(gen, 1 + k % 3, 1 + k % 4, 1 + k % 4,
                                            OpeningMode::kFixed);
    ExactResult r = exact_fixed(inst);
    EXPECT_TRUE(validate(inst, r.solution).feasible);
    EXPECT_EQ(r.cost.total, oracle::enumerate_fixed(inst)) << "case " << k;
    for (int s = 0; s < 1000; ++s)
      EXPECT_LE(r.cost.total, oracle::naive_total(inst, oracle::random_feasible_solution(gen, inst)));
  }
}

TEST(ExactFixed, GuardRefusesLargeInstances) {
  Instance inst = gen_classroom(5, 5, 2, 0, 1000, 1, 1);
  SizeGuard guard;
  guard.max_facilities = 16;
  EXPECT_THROW(exact_fixed(inst, guard), SizeGuardExceeded);
  EXPECT_THROW(exact_fixed(inst.with_mode(OpeningMode::kHourly), guard), Error);
}

TEST(ExactHourly, SingleFacilityPaysEveryStep) {
  Instance inst(1, 1, 3, 5, 1, OpeningMode::kHourly, 100, {0, 0, 0});
  EXPECT_DOUBLE_EQ(exact_hourly(inst).cost.total, 15);
}

TEST(ExactHourly, MatchesFullEnumeration) {
  std::mt19937_64 gen(7);
  for (int k = 0; k < 20; ++k) {
    int n = 1 + k % 2, m = 1 + k % 3, T = 1 + k % 3;
    Instance inst = oracle::random_instance(gen, n, m, T, OpeningMode::kHourly);
    ExactResult r = exact_hourly(inst);
    EXPECT_TRUE(validate(inst, r.solution).feasible);
    EXPECT_EQ(r.cost.total, oracle::enumerate_hourly(inst)) << "case " << k;
  }
}

TEST(ExactHourly, FreeOpeningAndSwitching) {
  std::mt19937_64 gen(8);
  Instance inst = oracle::random_instance(gen, 2, 3, 4, OpeningMode::kHourly, 0, 0);
  double expected = 0;
  for (int t = 0; t < 4; ++t)
    for (int j = 0; j < 2; ++j) {
      double best = oracle::kInf;
      for (int i = 0; i < 3; ++i) best = std::min(best, inst.distance(t, i, j));
      expected += best;
    }
  EXPECT_EQ(exact_hourly(inst).cost.total, expected);
}

TEST(ExactHourly, GuardRefusesLargeInstances) {
  Instance big = gen_classroom(3, 2, 3, 0, 1000, 1, 1, OpeningMode::kHourly);  // 2^7 * 7^7
  EXPECT_THROW(exact_hourly(big), SizeGuardExceeded);
  std::mt19937_64 gen(9);
  Instance longer = oracle::random_instance(gen, 1, 2, 9, OpeningMode::kHourly);
  EXPECT_THROW(exact_hourly(longer), SizeGuardExceeded);
}

TEST(SizeGuard, ReadsEnvironment) {
  ::setenv("DYNFL_SIZE_GUARD", "30", 1);
  EXPECT_EQ(SizeGuard::from_env().max_facilities, 30);
  ::setenv("DYNFL_SIZE_GUARD", "facilities=5,states=1e6,horizon=10", 1);
  SizeGuard g = SizeGuard::from_env();
  EXPECT_EQ(g.max_facilities, 5);
  EXPECT_EQ(g.max_hourly_states, 1e6);
  EXPECT_EQ(g.max_hourly_horizon, 10);
  ::setenv("DYNFL_SIZE_GUARD", "bogus=1", 1);
  EXPECT_THROW(SizeGuard::from_env(), Error);
  ::unsetenv("DYNFL_SIZE_GUARD");
  EXPECT_EQ(SizeGuard::from_env().max_facilities, SizeGuard{}.max_facilities);
}

TEST(StaticBaseline, ConstantDistancesMatchTheOptimum) {
  std::mt19937_64 gen(10);
  for (OpeningMode mode : {OpeningMode::kFixed, OpeningMode::kHourly}) {
    Instance one = oracle::random_instance(gen, 2, 3, 1, mode);
    std::vector<double> d;
    for (int t = 0; t < 4; ++t) d.insert(d.end(), one.distances().begin(), one.distances().end());
    Instance inst(2, 3, 4, one.opening_cost(), one.switching_cost(), mode,
                  one.infinity_sentinel() * 4, d);
    EXPECT_DOUBLE_EQ(static_baseline(inst).cost.total, exact_solve(inst).cost.total);
  }
}

TEST(StaticBaseline, ClassroomTeacherMovesEveryStep) {
  Instance inst = gen_classroom(5, 4, 10, 0, 1000, 1, 1);
  ExactResult r = static_baseline(inst);
  EXPECT_TRUE(validate(inst, r.solution).feasible);
  EXPECT_DOUBLE_EQ(r.cost.switching, 9);
  EXPECT_EQ(switch_count(r.solution, inst.clients() - 1), 9);
}

TEST(StaticBaseline, CrossingGroupsMergeAtTheCrossing) {
  Instance inst = gen_crossing(3, 5, 10, 1, 1);
  ExactResult r = static_baseline(inst);
  // At the middle step both groups sit on one point and one facility serves all.
  const auto& mid = r.solution.assignment[2];
  EXPECT_TRUE(std::all_of(mid.begin(), mid.end(), [&](int i) { return i == mid[0]; }));
  EXPECT_GE(r.cost.switching, 3);
  ExactResult opt = exact_fixed(inst.with_mode(OpeningMode::kFixed));
  EXPECT_LE(opt.cost.total, r.cost.total);
}

TEST(StaticBaseline, NeverBeatsTheOptimum) {
  std::mt19937_64 gen(11);
  for (int k = 0; k < 20; ++k) {
    OpeningMode mode = k % 2 ? OpeningMode::kHourly : OpeningMode::kFixed;
    Instance inst = oracle::random_instance(gen, 2, 3, 3, mode);
    ExactResult b = static_baseline(inst);
    EXPECT_TRUE(validate(inst, b.solution).feasible);
    EXPECT_GE(b.cost.total, exact_solve(inst).cost.total);
  }
}

}  // namespace
}  // namespace dynfl

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

#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "dynfl/generators.hpp"
#include "dynfl/io.hpp"
#include "dynfl/model.hpp"
#include "oracles.hpp"

namespace dynfl {
namespace {

Instance tiny(int n, int m, int T, double f, double g, OpeningMode mode, double d = 0) {
  return Instance(n, m, T, f, g, mode, 1e6,
                  std::vector<double>(static_cast<std::size_t>(n) * m * T, d));
}

TEST(Validate, OnlySolutionOfTrivialInstance) {
  Instance inst = tiny(1, 1, 1, 1, 1, OpeningMode::kFixed);
  Solution s{OpeningMode::kFixed, {{0}}, {{0}}};
  auto v = validate(inst, s);
  EXPECT_TRUE(v.feasible);
  EXPECT_TRUE(v.violations.empty());
}

TEST(Validate, ClosedFacilityIsReported) {
  Instance inst = tiny(1, 2, 1, 1, 1, OpeningMode::kFixed);
  Solution s{OpeningMode::kFixed, {{0}}, {{1}}};
  auto v = validate(inst, s);
  EXPECT_FALSE(v.feasible);
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_EQ(v.violations[0], (Violation{0, 0}));
}

TEST(Validate, RandomFeasibleSolutionsPass) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    auto mode = k % 2 ? OpeningMode::kHourly : OpeningMode::kFixed;
    Instance inst = oracle::random_instance(rng, 3, 3, 4, mode);
    EXPECT_TRUE(validate(inst, oracle::random_feasible_solution(rng, inst)).feasible);
  }
}

TEST(Validate, DimensionMismatchIsStructural) {
  Instance inst = tiny(2, 2, 2, 1, 1, OpeningMode::kFixed);
  Solution wrong_rows{OpeningMode::kFixed, {{0}}, {{0, 0}}};
  EXPECT_THROW(validate(inst, wrong_rows), DimensionMismatch);
  Solution wrong_mode{OpeningMode::kHourly, {{0}, {0}}, {{0, 0}, {0, 0}}};
  EXPECT_THROW(validate(inst, wrong_mode), DimensionMismatch);
  Solution bad_id{OpeningMode::kFixed, {{0}}, {{0, 5}, {0, 0}}};
  EXPECT_THROW(validate(inst, bad_id), DimensionMismatch);
  Solution unsorted{OpeningMode::kFixed, {{1, 0}}, {{0, 0}, {0, 0}}};
  EXPECT_THROW(validate(inst, unsorted), DimensionMismatch);
}

TEST(EvaluateCost, FixedForcedSolution) {
  Instance inst = tiny(1, 1, 1, 5, 1, OpeningMode::kFixed);
  CostBreakdown c = evaluate_cost(inst, {OpeningMode::kFixed, {{0}}, {{0}}});
  EXPECT_EQ(c.opening, 5);
  EXPECT_EQ(c.distance, 0);
  EXPECT_EQ(c.switching, 0);
  EXPECT_EQ(c.total, 5);
}

TEST(EvaluateCost, HourlyPaysEveryStep) {
  Instance inst = tiny(1, 1, 3, 5, 1, OpeningMode::kHourly);
  CostBreakdown c = evaluate_cost(inst, {OpeningMode::kHourly, {{0}, {0}, {0}}, {{0}, {0}, {0}}});
  EXPECT_EQ(c.opening, 15);
  EXPECT_EQ(c.total, 15);
}

TEST(EvaluateCost, HandBuiltTwoByTwo) {
  // d[t][i][j], T=3, m=2, n=2.
  Instance inst(2, 2, 3, 2.5, 1.5, OpeningMode::kFixed, 1e3,
                {1, 4, 3, 2,   //
                 5, 1, 2, 7,   //
                 0, 3, 6, 1});
  Solution s{OpeningMode::kFixed, {{0, 1}}, {{0, 1}, {1, 0}, {1, 1}}};
  CostBreakdown c = evaluate_cost(inst, s);
  // distance: t0: d(0,0)+d(1,1)=1+2, t1: d(1,0)+d(0,1)=2+1, t2: d(1,0)+d(1,1)=6+1
  EXPECT_DOUBLE_EQ(c.distance, 13);
  // client 0: 0->1->1 (one switch); client 1: 1->0->1 (two switches)
  EXPECT_DOUBLE_EQ(c.switching, 4.5);
  EXPECT_DOUBLE_EQ(c.opening, 5);
  EXPECT_NEAR(c.total, oracle::naive_total(inst, s), 1e-9);
}

TEST(EvaluateCost, MatchesNaiveSummationAndBounds) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    auto mode = k % 2 ? OpeningMode::kHourly : OpeningMode::kFixed;
    Instance inst = oracle::random_instance(rng, 1 + k % 4, 1 + k % 3, 1 + k % 5, mode);
    Solution s = oracle::random_feasible_solution(rng, inst);
    CostBreakdown c = evaluate_cost(inst, s);
    EXPECT_NEAR(c.total, oracle::naive_total(inst, s), 1e-9);
    EXPECT_NEAR(c.total, c.opening + c.distance + c.switching, 1e-12);
    const double n = inst.clients(), m = inst.facilities(), T = inst.horizon();
    EXPECT_LE(c.switching, inst.switching_cost() * n * (T - 1) + 1e-9);
    EXPECT_LE(c.opening, inst.opening_cost() * m * (mode == OpeningMode::kFixed ? 1 : T) + 1e-9);
    if (inst.switching_cost() > 0) {
      double q = c.switching / inst.switching_cost();
      EXPECT_DOUBLE_EQ(q, std::round(q));
    }
  }
}

TEST(EvaluateCost, InfeasibleCarriesViolations) {
  Instance inst = tiny(2, 2, 1, 1, 1, OpeningMode::kFixed);
  try {
    evaluate_cost(inst, {OpeningMode::kFixed, {{0}}, {{1, 1}}});
    FAIL() << "expected InfeasibleSolution";
  } catch (const InfeasibleSolution& e) {
    EXPECT_EQ(e.violations().size(), 2u);
  }
}

TEST(InstanceInvariants, RejectsBadParameters) {
  std::vector<double> one{0.0};
  EXPECT_THROW(Instance(1, 1, 1, -1, 0, OpeningMode::kFixed, 10, one), InvalidInstance);
  EXPECT_THROW(Instance(1, 1, 1, 0, -1, OpeningMode::kFixed, 10, one), InvalidInstance);
  EXPECT_THROW(Instance(1, 1, 1, 0, 0, OpeningMode::kFixed, 10, {-1.0}), InvalidInstance);
  EXPECT_THROW(Instance(1, 1, 1, 0, 0, OpeningMode::kFixed, 10, {0.0, 1.0}), InvalidInstance);
  EXPECT_THROW(Instance(1, 1, 0, 0, 0, OpeningMode::kFixed, 10, {}), InvalidInstance);
  // sentinel must exceed f*m*T + g*n*T = 5
  EXPECT_THROW(Instance(1, 1, 1, 3, 2, OpeningMode::kFixed, 5, one), InvalidInstance);
  EXPECT_NO_THROW(Instance(1, 1, 1, 3, 2, OpeningMode::kFixed, 5.5, one));
}

// I/O ------------------------------------------------------------------------

TEST(InstanceFile, ClassroomRoundTripsExactly) {
  Instance inst = gen_classroom(3, 2, 4, 0.125, 1000, 1.5, 0.75);
  EXPECT_EQ(parse_instance(dump_json(instance_to_json(inst))), inst);
}

TEST(InstanceFile, RandomWalkRoundTripsBitExactly) {
  // Irrational-looking distances exercise shortest round-trip formatting.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Instance inst = gen_random_walk(4, 3, 5, 0.2, 1.0 / 3, 0.1, seed, OpeningMode::kHourly);
    Instance back = parse_instance(dump_json(instance_to_json(inst)));
    ASSERT_EQ(back.distances().size(), inst.distances().size());
    for (std::size_t k = 0; k < inst.distances().size(); ++k)
      EXPECT_EQ(std::bit_cast<std::uint64_t>(back.distances()[k]),
                std::bit_cast<std::uint64_t>(inst.distances()[k]));
    EXPECT_EQ(back, inst);
  }
}

TEST(InstanceFile, RoundTripsThroughDisk) {
  auto path = std::filesystem::temp_directory_path() / "dynfl_model_test_instance.json";
  Instance inst = gen_crossing(2, 3);
  write_instance(path, inst);
  EXPECT_EQ(read_instance(path), inst);
  std::filesystem::remove(path);
}

std::string with_field(const std::string& key, const std::string& value) {
  nlohmann::json doc = instance_to_json(Instance(1, 1, 2, 1, 1, OpeningMode::kFixed, 100, {2, 3}));
  doc[key] = nlohmann::json::parse(value);
  return doc.dump();
}

TEST(InstanceFile, NegativeDistanceNamesItsPath) {
  try {
    parse_instance(with_field("distances", "[[[-1]],[[3]]]"), "bad.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.path(), "distances[0][0][0]");
    EXPECT_NE(std::string(e.what()).find("bad.json"), std::string::npos);
  }
}

TEST(InstanceFile, ZeroHorizonIsRejected) {
  try {
    parse_instance(with_field("T", "0"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.path(), "T");
  }
}

TEST(InstanceFile, MalformedInputs) {
  EXPECT_THROW(parse_instance("{not json"), ParseError);
  EXPECT_THROW(parse_instance(with_field("mode", "\"weekly\"")), ParseError);
  EXPECT_THROW(parse_instance(with_field("distances", "[[[1]]]")), ParseError);
  EXPECT_THROW(parse_instance(with_field("distances", "[[[1]],[[1,2]]]")), ParseError);
  EXPECT_THROW(parse_instance(with_field("n", "1.5")), ParseError);
  EXPECT_THROW(parse_instance(with_field("version", "2")), ParseError);
  EXPECT_THROW(parse_instance(with_field("distances", "[[[1]],[[101]]]")), ParseError);
  EXPECT_THROW(parse_instance(with_field("infinity_sentinel", "3")), ParseError);
  EXPECT_THROW(read_instance("/nonexistent/dir/instance.json"), ParseError);
}

TEST(SolutionFile, RoundTripsBothModes) {
  Solution fixed{OpeningMode::kFixed, {{0, 2}}, {{0, 2}, {2, 2}}};
  EXPECT_EQ(parse_solution(dump_json(solution_to_json(fixed))), fixed);
  Solution hourly{OpeningMode::kHourly, {{0}, {1, 2}}, {{0, 0}, {1, 2}}};
  EXPECT_EQ(parse_solution(dump_json(solution_to_json(hourly))), hourly);
}

TEST(SolutionFile, MalformedInputs) {
  EXPECT_THROW(parse_solution(R"({"mode":"fixed","open":[[0]],"assignment":[[0]]})"), ParseError);
  EXPECT_THROW(parse_solution(R"({"mode":"fixed","open":[0],"assignment":[["a"]]})"), ParseError);
  EXPECT_THROW(parse_solution(R"({"mode":"hourly","open":[0],"assignment":[[0]]})"), ParseError);
  EXPECT_THROW(parse_solution(R"({"open":[0],"assignment":[[0]]})"), ParseError);
}

TEST(GoldenFiles, ParseValidateAndReproduce) {
  const std::filesystem::path dir = DYNFL_SOURCE_DIR "/data/golden";
  Instance inst = read_instance(dir / "setcover_instance.json");
  Solution sol = read_solution(dir / "setcover_solution.json");
  EXPECT_EQ(inst, gen_setcover_gadget({3, {{0, 1}, {1, 2}, {2}}}, 1.0));
  EXPECT_TRUE(validate(inst, sol).feasible);
  EXPECT_DOUBLE_EQ(evaluate_cost(inst, sol).total, 2.0);

  Instance hourly = read_instance(dir / "classroom_hourly_instance.json");
  Solution hsol = read_solution(dir / "classroom_hourly_solution.json");
  EXPECT_EQ(hourly, gen_classroom(2, 1, 3, 0, 1000, 1, 1, OpeningMode::kHourly));
  EXPECT_TRUE(validate(hourly, hsol).feasible);
}

}  // namespace
}  // namespace dynfl

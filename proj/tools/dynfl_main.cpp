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

// dynfl: generate instances, solve them, compare solutions.
//
// Exit codes: 0 success, 1 solver failure, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dynfl/dynfl.hpp"

namespace {

constexpr int kExitSolverFailure = 1;
constexpr int kExitUsage = 2;

const std::map<std::string, dynfl::OpeningMode> kModes{
    {"fixed", dynfl::OpeningMode::kFixed}, {"hourly", dynfl::OpeningMode::kHourly}};

const std::map<std::string, dynfl::Algorithm> kAlgorithms{
    {"lp-round", dynfl::Algorithm::kLpRound},
    {"exact", dynfl::Algorithm::kExact},
    {"static", dynfl::Algorithm::kStatic}};

// Writes to `path`, or stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw dynfl::Error(path + ": cannot open for writing");
  out << text;
}

// "1,2;2,3;3" with 1-based elements -> 0-based sets.
std::vector<std::vector<int>> parse_sets(const std::string& text, int universe) {
  std::vector<std::vector<int>> sets;
  std::stringstream all(text);
  std::string chunk;
  while (std::getline(all, chunk, ';')) {
    std::vector<int> set;
    std::stringstream one(chunk);
    std::string item;
    while (std::getline(one, item, ',')) {
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      std::size_t used = 0;
      int e = 0;
      try {
        e = std::stoi(item, &used);
      } catch (const std::exception&) {
        throw CLI::ValidationError("--sets", "'" + item + "' is not an integer");
      }
      if (item.find_first_not_of(" \t", used) != std::string::npos)
        throw CLI::ValidationError("--sets", "'" + item + "' is not an integer");
      if (e < 1 || e > universe)
        throw CLI::ValidationError("--sets", "element " + item + " outside 1.." +
                                                 std::to_string(universe));
      set.push_back(e - 1);
    }
    sets.push_back(std::move(set));
  }
  if (sets.empty()) throw CLI::ValidationError("--sets", "no sets given");
  return sets;
}

struct GenerateArgs {
  std::string output;
  std::string mode = "fixed";
  double f = 1, g = 1;
  int groups = 5, size = 4, horizon = 10;
  double near = dynfl::kDefaultNear, far = dynfl::kDefaultFar, step = dynfl::kDefaultStep;
  int universe = 0;
  std::string sets;
  int clients = 6, facilities = 6;
  double walk_step = 0.1;
  std::uint64_t seed = 0;
};

struct SolveArgs {
  std::string instance;
  std::string algorithm = "lp-round";
  int trials = dynfl::kDefaultTrials;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string output;
  std::string report;
  std::string format = "table";
  std::string dump_lp;
  bool with_exact = false;
  bool with_static = false;
  bool timings = false;
};

struct ReportArgs {
  std::string instance;
  std::vector<std::string> solutions;
  std::string format = "table";
  std::string output;
  bool no_lp = false;
  bool no_exact = false;
};

void add_output(CLI::App* cmd, GenerateArgs& a) {
  cmd->add_option("-o,--output", a.output, "Instance file to write (default: stdout)");
}

void add_costs(CLI::App* cmd, GenerateArgs& a) {
  cmd->add_option("--f", a.f, "Opening cost")->check(CLI::NonNegativeNumber);
  cmd->add_option("--g", a.g, "Switching cost")->check(CLI::NonNegativeNumber);
  cmd->add_option("--mode", a.mode, "Opening mode")->check(CLI::IsMember({"fixed", "hourly"}));
}

int run_generate(CLI::App* cmd, const GenerateArgs& a) {
  const auto mode = kModes.at(a.mode);
  const std::string kind = cmd->get_subcommands().front()->get_name();
  std::optional<dynfl::Instance> inst;
  if (kind == "classroom") {
    inst = dynfl::gen_classroom(a.groups, a.size, a.horizon, a.near, a.far, a.f, a.g, mode);
  } else if (kind == "crossing") {
    inst = dynfl::gen_crossing(a.size, a.horizon, a.step, a.f, a.g, mode);
  } else if (kind == "setcover") {
    dynfl::SetSystem system{a.universe, parse_sets(a.sets, a.universe)};
    auto missing = dynfl::uncovered_elements(system);
    if (!missing.empty()) {
      std::cerr << "warning: " << missing.size()
                << " element(s) are in no set; every solution pays the infinity sentinel\n";
    }
    inst = dynfl::gen_setcover_gadget(system, a.f);
  } else {
    inst = dynfl::gen_random_walk(a.clients, a.facilities, a.horizon, a.walk_step, a.f, a.g,
                                  a.seed, mode);
  }
  emit(a.output, dynfl::dump_json(dynfl::instance_to_json(*inst)));
  return 0;
}

int run_solve(const SolveArgs& a, bool trials_given) {
  const auto algorithm = kAlgorithms.at(a.algorithm);
  if (trials_given && algorithm != dynfl::Algorithm::kLpRound)
    throw CLI::ValidationError("--trials", "only applies to --algorithm lp-round");

  dynfl::Instance inst = dynfl::read_instance(a.instance);
  if (!a.dump_lp.empty()) {
    dynfl::RelaxationLp relax = dynfl::build_lp(inst);
    std::ostringstream os;
    dynfl::write_cplex_lp(os, relax.lp, relax.index.names());
    emit(a.dump_lp, os.str());
  }

  dynfl::SolveOptions opt;
  opt.algorithm = algorithm;
  opt.trials = a.trials;
  opt.seed = a.seed;
  opt.threads = a.threads;
  opt.with_exact = a.with_exact;
  opt.with_static = a.with_static;
  opt.record_timings = a.timings;
  dynfl::SolveOutcome out = dynfl::run_solve(inst, opt, a.instance);

  if (!dynfl::validate(inst, out.best_solution))
    throw dynfl::Error("internal error: best solution is infeasible");
  if (!a.output.empty()) dynfl::write_solution(a.output, out.best_solution);

  std::string text;
  if (a.format == "json") {
    text = dynfl::dump_json(dynfl::report_to_json(out.report));
  } else {
    std::ostringstream os;
    dynfl::print_report_table(os, out.report);
    text = os.str();
  }
  emit(a.report, text);
  return 0;
}

int run_report(const ReportArgs& a) {
  dynfl::Instance inst = dynfl::read_instance(a.instance);
  std::vector<std::pair<std::string, dynfl::Solution>> solutions;
  for (const auto& path : a.solutions) solutions.emplace_back(path, dynfl::read_solution(path));
  dynfl::CompareOptions opt;
  opt.with_lp = !a.no_lp;
  opt.with_exact = !a.no_exact;
  dynfl::ComparisonReport rep = dynfl::compare_solutions(inst, solutions, opt);
  std::string text;
  if (a.format == "json") {
    text = dynfl::dump_json(dynfl::comparison_to_json(rep));
  } else {
    std::ostringstream os;
    dynfl::print_comparison_table(os, rep);
    text = os.str();
  }
  emit(a.output, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic facility location: instance generators, LP rounding, exact solvers"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a generated instance");
  generate->require_subcommand(1);

  auto* classroom = generate->add_subcommand("classroom", "Groups plus a teacher visiting them in turn");
  classroom->add_option("--groups", gen.groups, "Number of groups")->check(CLI::Range(2, 1000));
  classroom->add_option("--size", gen.size, "Students per group")->check(CLI::Range(1, 100000));
  classroom->add_option("--horizon", gen.horizon, "Time steps")->check(CLI::Range(1, 100000));
  classroom->add_option("--near", gen.near, "Distance within a group")->check(CLI::NonNegativeNumber);
  classroom->add_option("--far", gen.far, "Distance across groups")->check(CLI::PositiveNumber);
  add_costs(classroom, gen);
  add_output(classroom, gen);

  auto* crossing = generate->add_subcommand("crossing", "Two groups walking past each other");
  crossing->add_option("--size", gen.size, "Clients per group")->check(CLI::Range(1, 100000));
  crossing->add_option("--horizon", gen.horizon, "Time steps")->check(CLI::Range(2, 100000));
  crossing->add_option("--step", gen.step, "Distance walked per step")->check(CLI::PositiveNumber);
  add_costs(crossing, gen);
  add_output(crossing, gen);

  auto* setcover = generate->add_subcommand("setcover", "Set cover as a one-client instance");
  setcover->add_option("--universe", gen.universe, "Number of elements")
      ->required()
      ->check(CLI::Range(1, 1000000));
  setcover->add_option("--sets", gen.sets, "Sets of 1-based elements, e.g. \"1,2;2,3;3\"")->required();
  setcover->add_option("--f", gen.f, "Opening cost")->check(CLI::NonNegativeNumber);
  add_output(setcover, gen);

  auto* walk = generate->add_subcommand("random-walk", "Random walks in the unit square");
  walk->add_option("--clients", gen.clients, "Clients")->check(CLI::Range(1, 100000));
  walk->add_option("--facilities", gen.facilities, "Facilities")->check(CLI::Range(1, 100000));
  walk->add_option("--horizon", gen.horizon, "Time steps")->check(CLI::Range(1, 100000));
  walk->add_option("--step", gen.walk_step, "Max move per coordinate per step")
      ->check(CLI::NonNegativeNumber);
  walk->add_option("--seed", gen.seed, "Random seed");
  add_costs(walk, gen);
  add_output(walk, gen);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("instance", solve.instance, "Instance file")->required();
  solve_cmd->add_option("--algorithm", solve.algorithm, "lp-round, exact or static")
      ->check(CLI::IsMember({"lp-round", "exact", "static"}));
  auto* trials_opt = solve_cmd->add_option("--trials", solve.trials, "Rounding trials; the best is kept")
                         ->check(CLI::Range(1, 1000000));
  solve_cmd->add_option("--seed", solve.seed, "Master seed");
  solve_cmd->add_option("--threads", solve.threads, "Worker threads for trials")
      ->check(CLI::Range(1, 1024));
  solve_cmd->add_option("-o,--output", solve.output, "Solution file for the best trial");
  solve_cmd->add_option("--report", solve.report, "Report file (default: stdout)");
  solve_cmd->add_option("--format", solve.format, "Report format")
      ->check(CLI::IsMember({"json", "table"}));
  solve_cmd->add_option("--dump-lp", solve.dump_lp, "Write the relaxation in CPLEX LP format");
  solve_cmd->add_flag("--with-exact", solve.with_exact, "Also compute the exact optimum");
  solve_cmd->add_flag("--with-static", solve.with_static, "Also compute the static baseline");
  solve_cmd->add_flag("--timings", solve.timings, "Include wall-clock times in the report");

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Compare solutions of one instance");
  report_cmd->add_option("instance", report.instance, "Instance file")->required();
  report_cmd->add_option("solutions", report.solutions, "Solution files")->required();
  report_cmd->add_option("--format", report.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}));
  report_cmd->add_option("-o,--output", report.output, "Output file (default: stdout)");
  report_cmd->add_flag("--no-lp", report.no_lp, "Skip the LP bound");
  report_cmd->add_flag("--no-exact", report.no_exact, "Skip the exact optimum");

  try {
    app.parse(argc, argv);
    if (generate->parsed()) return run_generate(generate, gen);
    if (solve_cmd->parsed()) return run_solve(solve, trials_opt->count() > 0);
    return run_report(report);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const dynfl::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const dynfl::InvalidInstance& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
}

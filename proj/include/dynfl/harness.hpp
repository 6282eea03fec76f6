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

// Trial loops and reports behind the command-line tool.
//
// Seeding: trial k of a batch run with master seed s draws all of its
// randomness from Rng(derive_seed(s, k)), so results do not depend on how
// trials are spread over threads.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dynfl/exact.hpp"
#include "dynfl/io.hpp"
#include "dynfl/model.hpp"
#include "dynfl/random.hpp"
#include "dynfl/relaxation.hpp"
#include "dynfl/rounding.hpp"
#include "json.hpp"

namespace dynfl {

enum class Algorithm { kLpRound, kExact, kStatic };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kLpRound: return "lp-round";
    case Algorithm::kExact: return "exact";
    case Algorithm::kStatic: return "static";
  }
  return "?";
}

// ceil(log2(1 / 0.01)) trials, keeping the cheapest.
inline constexpr int kDefaultTrials = 7;

// Above this many columns the dense simplex is too slow and memory hungry.
inline constexpr int kMaxDenseLpVariables = 4000;

class LpTooLarge : public Error {
 public:
  using Error::Error;
};

struct SolveOptions {
  Algorithm algorithm = Algorithm::kLpRound;
  int trials = kDefaultTrials;
  std::uint64_t seed = 0;
  int threads = 1;
  bool with_exact = false;
  bool with_static = false;
  bool record_timings = false;
  int retry_budget = kDefaultRetryBudget;
  SizeGuard guard = SizeGuard::from_env();
};

struct TrialReport {
  std::string instance_id;
  std::string algorithm;
  OpeningMode mode = OpeningMode::kFixed;
  int clients = 0, facilities = 0, horizon = 0;
  std::uint64_t seed = 0;
  std::optional<double> lp_value;
  double bound_factor = 0;  // 4 ln(2nT)
  std::vector<CostBreakdown> trial_costs;
  std::vector<int> threshold_draws;  // hourly lp-round only
  int best_trial = 0;
  CostBreakdown best;
  std::optional<double> success_fraction;
  std::optional<double> exact_optimum;
  std::optional<double> static_cost;
  bool record_timings = false;
  double lp_seconds = 0, solve_seconds = 0, exact_seconds = 0, static_seconds = 0;
};

struct SolveOutcome {
  Solution best_solution;
  TrialReport report;
};

namespace harness_detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Runs body(k) for k in [0, count) on up to `threads` workers.
template <class Body>
void parallel_for(int count, int threads, Body&& body) {
  threads = std::clamp(threads, 1, std::max(1, count));
  if (threads == 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(count);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (int k = next++; k < count; k = next++) {
          try {
            body(k);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline nlohmann::json cost_json(const CostBreakdown& c) {
  return {{"opening", c.opening}, {"distance", c.distance},
          {"switching", c.switching}, {"total", c.total}};
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

template <class T>
std::string fmt(const std::optional<T>& v) {
  return v ? fmt(*v) : "-";
}

}  // namespace harness_detail

/// Solves the relaxation, refusing programs the dense engine cannot handle.
inline Relaxation solve_relaxation_guarded(const Instance& inst) {
  VariableIndex idx(inst.mode(), inst.clients(), inst.facilities(), inst.horizon());
  if (idx.count() > kMaxDenseLpVariables) {
    throw LpTooLarge("relaxation has " + std::to_string(idx.count()) +
                     " variables; the dense LP engine is limited to " +
                     std::to_string(kMaxDenseLpVariables));
  }
  return solve_relaxation(inst);
}

inline SolveOutcome run_solve(const Instance& inst, const SolveOptions& opt,
                              std::string instance_id = "") {
  using harness_detail::Stopwatch;
  SolveOutcome out;
  TrialReport& rep = out.report;
  rep.instance_id = std::move(instance_id);
  rep.algorithm = to_string(opt.algorithm);
  rep.mode = inst.mode();
  rep.clients = inst.clients();
  rep.facilities = inst.facilities();
  rep.horizon = inst.horizon();
  rep.seed = opt.seed;
  rep.bound_factor = approximation_factor(inst.clients(), inst.horizon());
  rep.record_timings = opt.record_timings;

  std::vector<Solution> solutions;
  if (opt.algorithm == Algorithm::kLpRound) {
    if (opt.trials < 1) throw Error("--trials must be >= 1");
    Stopwatch lp_clock;
    Relaxation relax = solve_relaxation_guarded(inst);
    rep.lp_seconds = lp_clock.seconds();
    rep.lp_value = relax.fractional.lp_value;

    Stopwatch clock;
    solutions.resize(opt.trials);
    std::vector<int> draws(opt.trials, 0);
    harness_detail::parallel_for(opt.trials, opt.threads, [&](int k) {
      Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(k)));
      if (inst.mode() == OpeningMode::kFixed) {
        solutions[k] = round_fixed(inst, relax.fractional, rng);
      } else {
        HourlyRounding r = round_hourly(inst, relax.fractional, rng, opt.retry_budget);
        solutions[k] = std::move(r.solution);
        draws[k] = r.attempts;
      }
    });
    rep.solve_seconds = clock.seconds();
    if (inst.mode() == OpeningMode::kHourly) rep.threshold_draws = std::move(draws);
  } else {
    Stopwatch clock;
    ExactResult r = opt.algorithm == Algorithm::kExact ? exact_solve(inst, opt.guard)
                                                       : static_baseline(inst, opt.guard);
    rep.solve_seconds = clock.seconds();
    solutions.push_back(std::move(r.solution));
    if (opt.algorithm == Algorithm::kExact) rep.exact_optimum = r.cost.total;
    else rep.static_cost = r.cost.total;
  }

  for (const auto& s : solutions) rep.trial_costs.push_back(evaluate_cost(inst, s));
  for (int k = 1; k < static_cast<int>(rep.trial_costs.size()); ++k)
    if (rep.trial_costs[k].total < rep.trial_costs[rep.best_trial].total) rep.best_trial = k;
  rep.best = rep.trial_costs[rep.best_trial];
  out.best_solution = solutions[rep.best_trial];

  if (rep.lp_value) {
    int ok = 0;
    for (const auto& c : rep.trial_costs) ok += c.total <= rep.bound_factor * *rep.lp_value;
    rep.success_fraction = static_cast<double>(ok) / rep.trial_costs.size();
  }
  if (opt.with_exact && !rep.exact_optimum) {
    Stopwatch clock;
    rep.exact_optimum = exact_solve(inst, opt.guard).cost.total;
    rep.exact_seconds = clock.seconds();
  }
  if (opt.with_static && !rep.static_cost) {
    Stopwatch clock;
    rep.static_cost = static_baseline(inst, opt.guard).cost.total;
    rep.static_seconds = clock.seconds();
  }
  return out;
}

inline nlohmann::json report_to_json(const TrialReport& r) {
  using harness_detail::cost_json;
  using harness_detail::optional_json;
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& c : r.trial_costs) trials.push_back(cost_json(c));
  nlohmann::json doc{{"instance", r.instance_id},
                     {"algorithm", r.algorithm},
                     {"mode", std::string(to_string(r.mode))},
                     {"n", r.clients},
                     {"m", r.facilities},
                     {"T", r.horizon},
                     {"seed", r.seed},
                     {"lp_value", optional_json(r.lp_value)},
                     {"bound_factor", r.bound_factor},
                     {"trials", std::move(trials)},
                     {"best_trial", r.best_trial},
                     {"best", cost_json(r.best)},
                     {"success_fraction", optional_json(r.success_fraction)},
                     {"exact_optimum", optional_json(r.exact_optimum)},
                     {"static_cost", optional_json(r.static_cost)}};
  if (!r.threshold_draws.empty()) doc["threshold_draws"] = r.threshold_draws;
  if (r.record_timings) {
    doc["seconds"] = {{"lp", r.lp_seconds}, {"solve", r.solve_seconds},
                      {"exact", r.exact_seconds}, {"static", r.static_seconds}};
  }
  return doc;
}

inline void print_report_table(std::ostream& os, const TrialReport& r) {
  using harness_detail::fmt;
  os << "instance   " << r.instance_id << '\n'
     << "algorithm  " << r.algorithm << " (" << to_string(r.mode) << ", n=" << r.clients
     << " m=" << r.facilities << " T=" << r.horizon << ", seed " << r.seed << ")\n"
     << "lp value   " << fmt(r.lp_value) << "   bound factor 4 ln(2nT) = " << fmt(r.bound_factor)
     << '\n';
  os << std::left << std::setw(7) << "trial" << std::right << std::setw(14) << "opening"
     << std::setw(14) << "distance" << std::setw(14) << "switching" << std::setw(14) << "total"
     << '\n';
  for (std::size_t k = 0; k < r.trial_costs.size(); ++k) {
    const auto& c = r.trial_costs[k];
    os << std::left << std::setw(7) << (std::to_string(k) + (static_cast<int>(k) == r.best_trial ? "*" : ""))
       << std::right << std::setw(14) << fmt(c.opening) << std::setw(14) << fmt(c.distance)
       << std::setw(14) << fmt(c.switching) << std::setw(14) << fmt(c.total) << '\n';
  }
  os << "best       " << fmt(r.best.total) << '\n'
     << "success    " << fmt(r.success_fraction) << '\n'
     << "exact      " << fmt(r.exact_optimum) << '\n'
     << "static     " << fmt(r.static_cost) << '\n';
  if (r.record_timings) {
    os << "seconds    lp " << fmt(r.lp_seconds, 3) << ", solve " << fmt(r.solve_seconds, 3)
       << ", exact " << fmt(r.exact_seconds, 3) << ", static " << fmt(r.static_seconds, 3)
       << '\n';
  }
}

// Comparison reports ---------------------------------------------------------

struct ComparisonRow {
  std::string label;
  CostBreakdown cost;
  std::optional<double> ratio_to_lp;
  std::optional<double> ratio_to_exact;
  double ratio_to_first = 1;
};

struct ComparisonReport {
  std::optional<double> lp_value;
  std::optional<double> exact_optimum;
  std::vector<ComparisonRow> rows;
};

struct CompareOptions {
  bool with_lp = true;
  bool with_exact = true;
  SizeGuard guard = SizeGuard::from_env();
};

/// Prices each solution and relates it to the LP bound, the exact optimum
/// and the first solution. LP and exact values are omitted when the
/// instance exceeds the respective size limits.
inline ComparisonReport compare_solutions(
    const Instance& inst, const std::vector<std::pair<std::string, Solution>>& solutions,
    const CompareOptions& opt = {}) {
  ComparisonReport rep;
  for (const auto& [label, s] : solutions) {
    try {
      rep.rows.push_back({label, evaluate_cost(inst, s), {}, {}, 1});
    } catch (const Error& e) {
      throw Error(label + ": " + e.what());
    }
  }
  if (opt.with_lp) {
    try {
      rep.lp_value = solve_relaxation_guarded(inst).fractional.lp_value;
    } catch (const LpTooLarge&) {
    }
  }
  if (opt.with_exact) {
    try {
      rep.exact_optimum = exact_solve(inst, opt.guard).cost.total;
    } catch (const SizeGuardExceeded&) {
    }
  }
  auto ratio = [](double num, double den) {
    if (den == 0) return num == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    return num / den;
  };
  for (auto& row : rep.rows) {
    if (rep.lp_value) row.ratio_to_lp = ratio(row.cost.total, *rep.lp_value);
    if (rep.exact_optimum) row.ratio_to_exact = ratio(row.cost.total, *rep.exact_optimum);
    if (!rep.rows.empty()) row.ratio_to_first = ratio(row.cost.total, rep.rows.front().cost.total);
  }
  return rep;
}

inline nlohmann::json comparison_to_json(const ComparisonReport& r) {
  using harness_detail::optional_json;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"solution", row.label},
                    {"cost", harness_detail::cost_json(row.cost)},
                    {"ratio_to_lp", optional_json(row.ratio_to_lp)},
                    {"ratio_to_exact", optional_json(row.ratio_to_exact)},
                    {"ratio_to_first", row.ratio_to_first}});
  }
  return {{"lp_value", optional_json(r.lp_value)},
          {"exact_optimum", optional_json(r.exact_optimum)},
          {"rows", std::move(rows)}};
}

inline void print_comparison_table(std::ostream& os, const ComparisonReport& r) {
  using harness_detail::fmt;
  std::size_t width = 8;
  for (const auto& row : r.rows) width = std::max(width, row.label.size() + 2);
  os << "lp value " << fmt(r.lp_value) << ", exact optimum " << fmt(r.exact_optimum) << '\n';
  os << std::left << std::setw(static_cast<int>(width)) << "solution" << std::right;
  for (const char* h : {"opening", "distance", "switching", "total", "/lp", "/exact", "/first"})
    os << std::setw(12) << h;
  os << '\n';
  for (const auto& row : r.rows) {
    os << std::left << std::setw(static_cast<int>(width)) << row.label << std::right
       << std::setw(12) << fmt(row.cost.opening) << std::setw(12) << fmt(row.cost.distance)
       << std::setw(12) << fmt(row.cost.switching) << std::setw(12) << fmt(row.cost.total)
       << std::setw(12) << fmt(row.ratio_to_lp) << std::setw(12) << fmt(row.ratio_to_exact)
       << std::setw(12) << fmt(row.ratio_to_first) << '\n';
  }
}

}  // namespace dynfl

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

// Randomized rounding of the relaxations.
//
// Both roundings segment each client's horizon with partition_intervals()
// and keep the client on one facility per interval. They differ in how
// facilities get opened:
//
//  * fixed mode draws ceil(2 ln(2nT) sum_i y_i) facilities i.i.d. with
//    probability proportional to y_i and serves each interval from the
//    drawn facility with the least total distance over that interval;
//
//  * hourly mode gives every facility an exponential threshold rho_i of
//    rate 2 ln(2nT), opens i at every step where y_ti > rho_i, and serves
//    each interval from the facility minimizing rho_i / x^I_ij. When that
//    minimum is >= 1 for some (client, interval) the draw is rejected and
//    retried.
//
// All logarithms are natural.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dynfl/fractional.hpp"
#include "dynfl/intervals.hpp"
#include "dynfl/model.hpp"
#include "dynfl/random.hpp"

namespace dynfl {

/// ln(2nT).
inline double log_factor(int clients, int horizon) {
  return std::log(2.0 * clients * horizon);
}

/// Cost guarantee multiplier 4 ln(2nT) relative to the LP value.
inline double approximation_factor(int clients, int horizon) {
  return 4.0 * log_factor(clients, horizon);
}

// Fixed opening cost ---------------------------------------------------------

inline int draw_count(const FractionalSolution& frac) {
  return static_cast<int>(
      std::ceil(2.0 * log_factor(frac.clients, frac.horizon) * frac.y_sum()));
}

/// Draws the facility multiset: draw_count(frac) independent picks, each
/// facility with probability y_i / sum y.
inline std::vector<int> sample_facilities_fixed(const FractionalSolution& frac, Rng& rng) {
  if (frac.mode != OpeningMode::kFixed) throw Error("fixed-mode fractional solution expected");
  const int m = frac.facilities;
  std::vector<double> cumulative(m);
  double total = 0;
  int last_positive = -1;
  for (int i = 0; i < m; ++i) {
    double w = std::max(0.0, frac.y(i));
    total += w;
    cumulative[i] = total;
    if (w > 0) last_positive = i;
  }
  if (!(total > 0)) throw Error("cannot sample facilities: all y are zero");

  const int draws = draw_count(frac);
  std::vector<int> out;
  out.reserve(draws);
  for (int k = 0; k < draws; ++k) {
    double u = uniform01(rng) * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    int i = it == cumulative.end() ? last_positive
                                   : static_cast<int>(it - cumulative.begin());
    out.push_back(i);
  }
  return out;
}

/// Serves each client interval from the drawn facility with the least summed
/// distance over the interval; ties go to the lowest facility id.
inline Solution assign_fixed(const Instance& inst, const IntervalPartition& partition,
                             std::span<const int> drawn) {
  if (drawn.empty()) throw Error("assign_fixed needs at least one drawn facility");
  std::vector<int> support(drawn.begin(), drawn.end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  Solution s;
  s.mode = OpeningMode::kFixed;
  s.open.push_back(support);
  s.assignment.assign(inst.horizon(), std::vector<int>(inst.clients(), support.front()));
  for (int j = 0; j < inst.clients(); ++j) {
    const auto& ci = partition.clients.at(j);
    for (int k = 0; k < ci.count(); ++k) {
      int best = support.front();
      double best_cost = std::numeric_limits<double>::infinity();
      for (int i : support) {
        double cost = 0;
        for (int t = ci.begin(k); t < ci.end(k); ++t) cost += inst.distance(t, i, j);
        if (cost < best_cost) {
          best_cost = cost;
          best = i;
        }
      }
      for (int t = ci.begin(k); t < ci.end(k); ++t) s.assignment[t][j] = best;
    }
  }
  return s;
}

inline Solution round_fixed(const Instance& inst, const FractionalSolution& frac, Rng& rng) {
  auto drawn = sample_facilities_fixed(frac, rng);
  return assign_fixed(inst, partition_intervals(frac), drawn);
}

// Hourly opening cost --------------------------------------------------------

struct ThresholdDraw {
  std::vector<double> thresholds;  // rho_i > 0
  double rate = 0;
};

inline ThresholdDraw sample_thresholds(const FractionalSolution& frac, Rng& rng) {
  ThresholdDraw draw;
  draw.rate = 2.0 * log_factor(frac.clients, frac.horizon);
  draw.thresholds.reserve(frac.facilities);
  for (int i = 0; i < frac.facilities; ++i)
    draw.thresholds.push_back(exponential(rng, draw.rate));
  return draw;
}

/// A_t = { i : y_ti > rho_i }, each set sorted.
inline std::vector<std::vector<int>> open_schedule(const FractionalSolution& frac,
                                                   const ThresholdDraw& draw) {
  std::vector<std::vector<int>> open(frac.horizon);
  for (int t = 0; t < frac.horizon; ++t)
    for (int i = 0; i < frac.facilities; ++i)
      if (frac.y(i, t) > draw.thresholds[i]) open[t].push_back(i);
  return open;
}

/// Serves each client interval from the facility minimizing rho_i / x^I_ij.
/// Returns nullopt (retry) when that minimum is not below 1 for some
/// client interval.
///
/// A ratio below 1 means rho_i < x^I_ij <= y_ti on the whole interval, so
/// the chosen facility is open throughout. Candidates are restricted to
/// facilities that are open throughout, which only matters when LP
/// round-off leaves x marginally above y.
inline std::optional<Solution> assign_hourly(const Instance& inst,
                                             const FractionalSolution& frac,
                                             const IntervalPartition& partition,
                                             const ThresholdDraw& draw) {
  Solution s;
  s.mode = OpeningMode::kHourly;
  s.open = open_schedule(frac, draw);
  const int m = inst.facilities();
  std::vector<std::vector<char>> is_open(inst.horizon(), std::vector<char>(m, 0));
  for (int t = 0; t < inst.horizon(); ++t)
    for (int i : s.open[t]) is_open[t][i] = 1;

  s.assignment.assign(inst.horizon(), std::vector<int>(inst.clients(), 0));
  for (int j = 0; j < inst.clients(); ++j) {
    const auto& ci = partition.clients.at(j);
    for (int k = 0; k < ci.count(); ++k) {
      int best = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        double share = ci.min_share[k][i];
        if (!(share > 0)) continue;
        double ratio = draw.thresholds[i] / share;
        if (ratio >= best_ratio) continue;
        bool open_throughout = true;
        for (int t = ci.begin(k); t < ci.end(k) && open_throughout; ++t)
          open_throughout = is_open[t][i] != 0;
        if (!open_throughout) continue;
        best_ratio = ratio;
        best = i;
      }
      if (best < 0 || !(best_ratio < 1.0)) return std::nullopt;
      for (int t = ci.begin(k); t < ci.end(k); ++t) s.assignment[t][j] = best;
    }
  }
  return s;
}

class RetryBudgetExhausted : public Error {
 public:
  using Error::Error;
};

struct HourlyRounding {
  Solution solution;
  int attempts = 0;  // threshold draws used, including the successful one
};

inline constexpr int kDefaultRetryBudget = 64;

inline HourlyRounding round_hourly(const Instance& inst, const FractionalSolution& frac,
                                   Rng& rng, int retry_budget = kDefaultRetryBudget) {
  if (frac.mode != OpeningMode::kHourly) throw Error("hourly-mode fractional solution expected");
  const IntervalPartition partition = partition_intervals(frac);
  for (int attempt = 1; attempt <= retry_budget; ++attempt) {
    ThresholdDraw draw = sample_thresholds(frac, rng);
    if (auto s = assign_hourly(inst, frac, partition, draw)) return {std::move(*s), attempt};
  }
  throw RetryBudgetExhausted("hourly rounding failed to cover every client interval in " +
                             std::to_string(retry_budget) + " threshold draws (n=" +
                             std::to_string(inst.clients()) + ", T=" +
                             std::to_string(inst.horizon()) + ")");
}

}  // namespace dynfl

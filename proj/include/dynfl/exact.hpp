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

// Exact solvers for small instances and the per-snapshot static baseline.
//
// Once the open sets are fixed the objective separates over clients, and
// each client's best facility sequence is a shortest path over
// (time, facility) with switching edges of weight g.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "dynfl/model.hpp"

namespace dynfl {

class SizeGuardExceeded : public Error {
 public:
  using Error::Error;
};

/// Limits on exhaustive search. Raised through the DYNFL_SIZE_GUARD
/// environment variable, either a bare facility limit ("20") or a list
/// such as "facilities=20,states=1000000,horizon=10".
struct SizeGuard {
  int max_facilities = 24;
  double max_hourly_states = 1e5;  // 2^m * m^n
  int max_hourly_horizon = 8;

  static SizeGuard from_env() {
    SizeGuard guard;
    const char* raw = std::getenv("DYNFL_SIZE_GUARD");
    if (raw == nullptr || *raw == '\0') return guard;
    std::string spec(raw);
    if (spec.find('=') == std::string::npos) {
      guard.max_facilities = std::stoi(spec);
      return guard;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw Error("DYNFL_SIZE_GUARD: bad entry '" + item + "'");
      std::string key = item.substr(0, eq);
      std::string value = item.substr(eq + 1);
      if (key == "facilities") guard.max_facilities = std::stoi(value);
      else if (key == "states") guard.max_hourly_states = std::stod(value);
      else if (key == "horizon") guard.max_hourly_horizon = std::stoi(value);
      else throw Error("DYNFL_SIZE_GUARD: unknown key '" + key + "'");
    }
    return guard;
  }
};

using OpenSets = std::vector<std::vector<int>>;

struct AssignmentResult {
  std::vector<std::vector<int>> assignment;  // [t][j]
  double distance = 0;
  double switching = 0;

  double cost() const { return distance + switching; }
};

namespace exact_detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool tied(double value, double best) {
  return value <= best + 1e-9 * std::max(1.0, std::abs(best));
}

inline const std::vector<int>& open_at(const OpenSets& open, int t) {
  return open.size() == 1 ? open.front() : open[t];
}

// Cost of client j's best facility sequence, with early exit once the
// running minimum exceeds `cutoff`.
inline double client_cost(const Instance& inst, const OpenSets& open, int j,
                          std::vector<double>& value, double cutoff = kInf) {
  const int m = inst.facilities();
  const double g = inst.switching_cost();
  value.assign(m, kInf);
  for (int i : open_at(open, 0)) value[i] = inst.distance(0, i, j);
  for (int t = 1; t < inst.horizon(); ++t) {
    double first = kInf, second = kInf;
    int first_i = -1;
    for (int i : open_at(open, t - 1)) {
      if (value[i] < first) {
        second = first;
        first = value[i];
        first_i = i;
      } else if (value[i] < second) {
        second = value[i];
      }
    }
    if (first > cutoff) return kInf;
    std::vector<double> next(m, kInf);
    for (int i : open_at(open, t)) {
      double other = (i == first_i ? second : first) + g;
      next[i] = inst.distance(t, i, j) + std::min(value[i], other);
    }
    value.swap(next);
  }
  double best = kInf;
  for (int i : open_at(open, inst.horizon() - 1)) best = std::min(best, value[i]);
  return best;
}

// Generic best-subset search. Subsets are visited by increasing size and
// lexicographically within a size; the search stops once f * size plus the
// distance lower bound cannot beat the incumbent. Ties keep the earlier
// subset.
template <class Evaluate>
std::vector<int> best_subset(int m, double f, double lower_bound, Evaluate&& evaluate,
                             double& best_cost) {
  best_cost = kInf;
  std::vector<int> best;
  std::vector<int> subset;
  for (int size = 1; size <= m; ++size) {
    if (f * size + lower_bound > best_cost &&
        !tied(f * size + lower_bound, best_cost))
      break;
    subset.resize(size);
    for (int k = 0; k < size; ++k) subset[k] = k;
    while (true) {
      double cost = evaluate(subset, best_cost);
      if (cost < best_cost && !tied(best_cost, cost)) {
        best_cost = cost;
        best = subset;
      }
      int k = size - 1;
      while (k >= 0 && subset[k] == m - size + k) --k;
      if (k < 0) break;
      ++subset[k];
      for (int r = k + 1; r < size; ++r) subset[r] = subset[r - 1] + 1;
    }
  }
  return best;
}

inline double distance_lower_bound(const Instance& inst) {
  double lb = 0;
  for (int t = 0; t < inst.horizon(); ++t)
    for (int j = 0; j < inst.clients(); ++j) {
      double best = kInf;
      for (int i = 0; i < inst.facilities(); ++i) best = std::min(best, inst.distance(t, i, j));
      lb += best;
    }
  return lb;
}

}  // namespace exact_detail

/// Distance- and switching-minimal assignment for given open sets (one set
/// for the whole horizon, or one per step). Among optimal assignments each
/// client gets the lexicographically smallest facility sequence.
inline AssignmentResult optimal_assignment(const Instance& inst, const OpenSets& open) {
  using exact_detail::kInf;
  const int T = inst.horizon(), m = inst.facilities(), n = inst.clients();
  if (open.size() != 1 && open.size() != static_cast<std::size_t>(T))
    throw DimensionMismatch("open sets must number 1 or T");
  for (std::size_t t = 0; t < open.size(); ++t) {
    if (open[t].empty())
      throw InfeasibleSolution({Violation{static_cast<int>(t), 0}});
    for (int i : open[t])
      if (i < 0 || i >= m) throw DimensionMismatch("open facility id out of range");
  }
  const double g = inst.switching_cost();
  const auto& at = [&](int t) -> const std::vector<int>& { return exact_detail::open_at(open, t); };

  AssignmentResult result;
  result.assignment.assign(T, std::vector<int>(n, 0));
  // cost_to_go[t][i]: cheapest service of steps t..T-1 starting on facility i.
  std::vector<std::vector<double>> cost_to_go(T, std::vector<double>(m, kInf));
  for (int j = 0; j < n; ++j) {
    for (int i : at(T - 1)) cost_to_go[T - 1][i] = inst.distance(T - 1, i, j);
    for (int t = T - 2; t >= 0; --t) {
      std::fill(cost_to_go[t].begin(), cost_to_go[t].end(), kInf);
      double first = kInf, second = kInf;
      int first_i = -1;
      for (int i : at(t + 1)) {
        double v = cost_to_go[t + 1][i];
        if (v < first) {
          second = first;
          first = v;
          first_i = i;
        } else if (v < second) {
          second = v;
        }
      }
      for (int i : at(t)) {
        double other = (i == first_i ? second : first) + g;
        cost_to_go[t][i] = inst.distance(t, i, j) + std::min(cost_to_go[t + 1][i], other);
      }
    }
    auto pick = [&](int t, int previous) {
      double best = kInf;
      for (int i : at(t)) {
        double v = cost_to_go[t][i] + (previous >= 0 && i != previous ? g : 0.0);
        best = std::min(best, v);
      }
      for (int i : at(t)) {
        double v = cost_to_go[t][i] + (previous >= 0 && i != previous ? g : 0.0);
        if (exact_detail::tied(v, best)) return i;
      }
      return at(t).front();
    };
    int previous = -1;
    for (int t = 0; t < T; ++t) {
      int i = pick(t, previous);
      result.assignment[t][j] = i;
      result.distance += inst.distance(t, i, j);
      if (previous >= 0 && previous != i) result.switching += g;
      previous = i;
    }
    for (auto& row : cost_to_go) std::fill(row.begin(), row.end(), kInf);
  }
  return result;
}

struct ExactResult {
  Solution solution;
  CostBreakdown cost;
};

/// Optimal fixed-mode solution by subset enumeration. Among optimal open
/// sets the smallest, then lexicographically first, is returned.
inline ExactResult exact_fixed(const Instance& inst, const SizeGuard& guard = SizeGuard::from_env()) {
  if (inst.mode() != OpeningMode::kFixed) throw Error("exact_fixed needs a fixed-mode instance");
  if (inst.facilities() > guard.max_facilities) {
    throw SizeGuardExceeded("exact_fixed enumerates all facility subsets and is limited to " +
                            std::to_string(guard.max_facilities) + " facilities (instance has " +
                            std::to_string(inst.facilities()) +
                            "); set DYNFL_SIZE_GUARD=facilities=N to raise the limit");
  }
  const int n = inst.clients();
  const double f = inst.opening_cost();
  std::vector<double> scratch;
  OpenSets open(1);
  auto evaluate = [&](const std::vector<int>& subset, double incumbent) {
    open[0] = subset;
    double cost = f * static_cast<double>(subset.size());
    for (int j = 0; j < n && cost < exact_detail::kInf; ++j) {
      cost += exact_detail::client_cost(inst, open, j, scratch, incumbent - cost);
      if (cost > incumbent && !exact_detail::tied(cost, incumbent)) return exact_detail::kInf;
    }
    return cost;
  };
  double best_cost = 0;
  std::vector<int> best = exact_detail::best_subset(
      inst.facilities(), f, exact_detail::distance_lower_bound(inst), evaluate, best_cost);

  ExactResult r;
  r.solution.mode = OpeningMode::kFixed;
  r.solution.open = {best};
  r.solution.assignment = optimal_assignment(inst, r.solution.open).assignment;
  r.cost = evaluate_cost(inst, r.solution);
  return r;
}

/// Optimal hourly-mode solution by dynamic programming over the joint
/// assignment phi_t in m^n, opening exactly the facilities phi_t uses.
inline ExactResult exact_hourly(const Instance& inst, const SizeGuard& guard = SizeGuard::from_env()) {
  if (inst.mode() != OpeningMode::kHourly) throw Error("exact_hourly needs an hourly-mode instance");
  const int n = inst.clients(), m = inst.facilities(), T = inst.horizon();
  const double states_bound = std::pow(2.0, m) * std::pow(static_cast<double>(m), n);
  if (states_bound > guard.max_hourly_states || T > guard.max_hourly_horizon) {
    std::ostringstream os;
    os << "exact_hourly is limited to 2^m * m^n <= " << guard.max_hourly_states
       << " and T <= " << guard.max_hourly_horizon << " (instance: " << states_bound
       << " states, T=" << T << "); set DYNFL_SIZE_GUARD=states=S,horizon=H to raise";
    throw SizeGuardExceeded(os.str());
  }
  const double f = inst.opening_cost(), g = inst.switching_cost();
  std::size_t S = 1;
  for (int j = 0; j < n; ++j) S *= static_cast<std::size_t>(m);

  // Code of phi: client 0 is the most significant base-m digit, so code
  // order is lexicographic order of the assignment vector.
  std::vector<int> digits(static_cast<std::size_t>(S) * n);
  std::vector<int> image_size(S);
  for (std::size_t code = 0; code < S; ++code) {
    std::size_t rest = code;
    std::vector<char> used(m, 0);
    for (int j = n - 1; j >= 0; --j) {
      int i = static_cast<int>(rest % m);
      rest /= m;
      digits[code * n + j] = i;
      used[i] = 1;
    }
    image_size[code] = static_cast<int>(std::count(used.begin(), used.end(), 1));
  }
  auto step_cost = [&](int t, std::size_t code) {
    double c = f * image_size[code];
    for (int j = 0; j < n; ++j) c += inst.distance(t, digits[code * n + j], j);
    return c;
  };
  // min over psi of v(psi) + g * hamming(phi, psi), one coordinate at a time.
  auto hamming_envelope = [&](std::vector<double> v) {
    std::size_t stride = S;
    for (int j = 0; j < n; ++j) {
      stride /= m;
      for (std::size_t base = 0; base < S; ++base) {
        if ((base / stride) % m != 0) continue;
        double lowest = exact_detail::kInf;
        for (int a = 0; a < m; ++a) lowest = std::min(lowest, v[base + a * stride]);
        for (int a = 0; a < m; ++a) {
          double& cell = v[base + a * stride];
          cell = std::min(cell, lowest + g);
        }
      }
    }
    return v;
  };

  std::vector<std::vector<double>> cost_to_go(T, std::vector<double>(S));
  for (std::size_t c = 0; c < S; ++c) cost_to_go[T - 1][c] = step_cost(T - 1, c);
  for (int t = T - 2; t >= 0; --t) {
    std::vector<double> env = hamming_envelope(cost_to_go[t + 1]);
    for (std::size_t c = 0; c < S; ++c) cost_to_go[t][c] = step_cost(t, c) + env[c];
  }

  auto hamming = [&](std::size_t a, std::size_t b) {
    int h = 0;
    for (int j = 0; j < n; ++j) h += digits[a * n + j] != digits[b * n + j];
    return h;
  };
  std::vector<std::size_t> path(T);
  for (int t = 0; t < T; ++t) {
    auto value = [&](std::size_t c) {
      return cost_to_go[t][c] + (t > 0 ? g * hamming(path[t - 1], c) : 0.0);
    };
    double best = exact_detail::kInf;
    for (std::size_t c = 0; c < S; ++c) best = std::min(best, value(c));
    for (std::size_t c = 0; c < S; ++c) {
      if (exact_detail::tied(value(c), best)) {
        path[t] = c;
        break;
      }
    }
  }

  ExactResult r;
  r.solution.mode = OpeningMode::kHourly;
  r.solution.open.resize(T);
  r.solution.assignment.assign(T, std::vector<int>(n));
  for (int t = 0; t < T; ++t) {
    for (int j = 0; j < n; ++j) r.solution.assignment[t][j] = digits[path[t] * n + j];
    std::vector<int> used(r.solution.assignment[t]);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    r.solution.open[t] = std::move(used);
  }
  r.cost = evaluate_cost(inst, r.solution);
  return r;
}

inline ExactResult exact_solve(const Instance& inst, const SizeGuard& guard = SizeGuard::from_env()) {
  return inst.mode() == OpeningMode::kFixed ? exact_fixed(inst, guard) : exact_hourly(inst, guard);
}

/// Optimal static solution of every snapshot, concatenated and priced under
/// the dynamic objective. Fixed mode pays for the union of the per-snapshot
/// open sets; hourly mode pays each snapshot's set at its step.
inline ExactResult static_baseline(const Instance& inst, const SizeGuard& guard = SizeGuard::from_env()) {
  const int T = inst.horizon();
  ExactResult r;
  r.solution.mode = inst.mode();
  std::vector<int> union_set;
  for (int t = 0; t < T; ++t) {
    ExactResult snap = exact_fixed(inst.snapshot(t).with_mode(OpeningMode::kFixed), guard);
    const auto& chosen = snap.solution.open.front();
    r.solution.assignment.push_back(snap.solution.assignment.front());
    if (inst.mode() == OpeningMode::kHourly) {
      r.solution.open.push_back(chosen);
    } else {
      union_set.insert(union_set.end(), chosen.begin(), chosen.end());
    }
  }
  if (inst.mode() == OpeningMode::kFixed) {
    std::sort(union_set.begin(), union_set.end());
    union_set.erase(std::unique(union_set.begin(), union_set.end()), union_set.end());
    r.solution.open = {union_set};
  }
  r.cost = evaluate_cost(inst, r.solution);
  return r;
}

}  // namespace dynfl

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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dynfl {

// Errors ---------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance parameters violate a model invariant.
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

// A solution whose shape does not match its instance (wrong mode, wrong
// horizon, facility ids out of range). Distinct from infeasibility.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

struct Violation {
  int t = 0;  // time step, 0-based
  int j = 0;  // client
  friend bool operator==(const Violation&, const Violation&) = default;
};

class InfeasibleSolution : public Error {
 public:
  explicit InfeasibleSolution(std::vector<Violation> violations)
      : Error(describe(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string describe(const std::vector<Violation>& v) {
    std::ostringstream os;
    os << "infeasible solution: " << v.size()
       << " client(s) assigned to a closed facility";
    if (!v.empty()) os << " (first at t=" << v[0].t << ", j=" << v[0].j << ")";
    return os.str();
  }

  std::vector<Violation> violations_;
};

// Instance -------------------------------------------------------------------

enum class OpeningMode { kFixed, kHourly };

inline std::string_view to_string(OpeningMode mode) {
  return mode == OpeningMode::kFixed ? "fixed" : "hourly";
}

/// Smallest sentinel the instance accepts: any solution that avoids sentinel
/// edges must be cheaper than a single sentinel edge.
inline double sentinel_floor(int clients, int facilities, int horizon,
                             double opening_cost, double switching_cost) {
  return opening_cost * facilities * horizon +
         switching_cost * clients * horizon;
}

/// A sentinel large enough to dominate every solution that uses only
/// distances up to `max_finite`.
inline double default_sentinel(int clients, int facilities, int horizon,
                               double opening_cost, double switching_cost,
                               double max_finite) {
  double bound =
      sentinel_floor(clients, facilities, horizon, opening_cost,
                     switching_cost) +
      max_finite * clients * horizon;
  return std::ceil(2.0 * bound) + 1.0;
}

/// A dynamic facility location instance: n clients, m facilities, T time
/// steps and the distance tensor d_t(i, j) stored [t][i][j], row-major.
///
/// Time steps are array positions 0..T-1. A distance equal to the
/// infinity sentinel stands for "unreachable".
class Instance {
 public:
  Instance(int clients, int facilities, int horizon, double opening_cost,
           double switching_cost, OpeningMode mode, double infinity_sentinel,
           std::vector<double> distances)
      : n_(clients),
        m_(facilities),
        T_(horizon),
        f_(opening_cost),
        g_(switching_cost),
        mode_(mode),
        sentinel_(infinity_sentinel),
        d_(std::move(distances)) {
    validate();
  }

  int clients() const { return n_; }
  int facilities() const { return m_; }
  int horizon() const { return T_; }
  double opening_cost() const { return f_; }
  double switching_cost() const { return g_; }
  OpeningMode mode() const { return mode_; }
  double infinity_sentinel() const { return sentinel_; }

  double distance(int t, int i, int j) const {
    return d_[(static_cast<std::size_t>(t) * m_ + i) * n_ + j];
  }
  bool is_infinite(int t, int i, int j) const {
    return distance(t, i, j) >= sentinel_;
  }
  std::span<const double> distances() const { return d_; }

  /// Same data under the other opening mode.
  Instance with_mode(OpeningMode mode) const {
    Instance copy = *this;
    copy.mode_ = mode;
    return copy;
  }

  /// The single snapshot at time t as a one-step instance.
  Instance snapshot(int t) const {
    auto first = d_.begin() + static_cast<std::ptrdiff_t>(t) * m_ * n_;
    std::vector<double> d(first, first + static_cast<std::ptrdiff_t>(m_) * n_);
    double sentinel = std::max(sentinel_, sentinel_floor(n_, m_, 1, f_, g_) + 1);
    return Instance(n_, m_, 1, f_, g_, mode_, sentinel, std::move(d));
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  void validate() const {
    auto fail = [](const std::string& msg) { throw InvalidInstance(msg); };
    if (n_ < 1) fail("client count must be >= 1");
    if (m_ < 1) fail("facility count must be >= 1");
    if (T_ < 1) fail("horizon must be >= 1");
    if (!(f_ >= 0) || !std::isfinite(f_)) fail("opening cost must be finite and >= 0");
    if (!(g_ >= 0) || !std::isfinite(g_)) fail("switching cost must be finite and >= 0");
    if (!std::isfinite(sentinel_) ||
        !(sentinel_ > sentinel_floor(n_, m_, T_, f_, g_)))
      fail("infinity sentinel must exceed f*m*T + g*n*T");
    std::size_t expected = static_cast<std::size_t>(T_) * m_ * n_;
    if (d_.size() != expected) {
      fail("distance tensor has " + std::to_string(d_.size()) +
           " entries, expected T*m*n = " + std::to_string(expected));
    }
    for (std::size_t k = 0; k < d_.size(); ++k) {
      if (!(d_[k] >= 0) || !(d_[k] <= sentinel_)) {
        std::size_t t = k / (static_cast<std::size_t>(m_) * n_);
        std::size_t i = (k / n_) % m_;
        std::size_t j = k % n_;
        fail("distance [" + std::to_string(t) + "][" + std::to_string(i) +
             "][" + std::to_string(j) + "] must lie in [0, sentinel]");
      }
    }
  }

  int n_;
  int m_;
  int T_;
  double f_;
  double g_;
  OpeningMode mode_;
  double sentinel_;
  std::vector<double> d_;
};

// Solution -------------------------------------------------------------------

/// Opened facilities plus the per-step assignment phi_t.
///
/// `open` holds one sorted set in fixed mode and T sets in hourly mode.
/// `assignment[t][j]` is the facility serving client j at step t.
struct Solution {
  OpeningMode mode = OpeningMode::kFixed;
  std::vector<std::vector<int>> open;
  std::vector<std::vector<int>> assignment;

  std::span<const int> open_at(int t) const {
    return mode == OpeningMode::kFixed ? open.front() : open[t];
  }

  friend bool operator==(const Solution&, const Solution&) = default;
};

struct CostBreakdown {
  double opening = 0;
  double distance = 0;
  double switching = 0;
  double total = 0;
};

struct ValidationResult {
  bool feasible = true;
  std::vector<Violation> violations;

  explicit operator bool() const { return feasible; }
};

inline void check_dimensions(const Instance& instance, const Solution& s) {
  auto fail = [](const std::string& msg) { throw DimensionMismatch(msg); };
  const int n = instance.clients();
  const int m = instance.facilities();
  const int T = instance.horizon();
  if (s.mode != instance.mode()) fail("solution mode differs from instance mode");
  std::size_t expected_sets = s.mode == OpeningMode::kFixed ? 1 : T;
  if (s.open.size() != expected_sets) {
    fail("expected " + std::to_string(expected_sets) + " open set(s), got " +
         std::to_string(s.open.size()));
  }
  for (const auto& set : s.open) {
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (set[k] < 0 || set[k] >= m) fail("open facility id out of range");
      if (k > 0 && set[k] <= set[k - 1])
        fail("open sets must be strictly increasing");
    }
  }
  if (s.assignment.size() != static_cast<std::size_t>(T))
    fail("assignment must have T rows");
  for (const auto& row : s.assignment) {
    if (row.size() != static_cast<std::size_t>(n))
      fail("assignment rows must have n entries");
    for (int i : row)
      if (i < 0 || i >= m) fail("assigned facility id out of range");
  }
}

/// Checks that every client is served by an open facility at every step.
/// Throws DimensionMismatch when the solution does not fit the instance.
inline ValidationResult validate(const Instance& instance, const Solution& s) {
  check_dimensions(instance, s);
  ValidationResult result;
  for (int t = 0; t < instance.horizon(); ++t) {
    auto open = s.open_at(t);
    for (int j = 0; j < instance.clients(); ++j) {
      if (!std::binary_search(open.begin(), open.end(), s.assignment[t][j]))
        result.violations.push_back({t, j});
    }
  }
  result.feasible = result.violations.empty();
  return result;
}

inline CostBreakdown evaluate_cost(const Instance& instance, const Solution& s) {
  if (auto v = validate(instance, s); !v) {
    throw InfeasibleSolution(std::move(v.violations));
  }
  const int T = instance.horizon();
  const int n = instance.clients();

  long long open_count = 0;
  for (const auto& set : s.open) open_count += static_cast<long long>(set.size());
  long long switches = 0;
  double distance = 0;
  for (int t = 0; t < T; ++t) {
    for (int j = 0; j < n; ++j) {
      distance += instance.distance(t, s.assignment[t][j], j);
      if (t + 1 < T && s.assignment[t][j] != s.assignment[t + 1][j]) ++switches;
    }
  }

  CostBreakdown cost;
  cost.opening = instance.opening_cost() * static_cast<double>(open_count);
  cost.distance = distance;
  cost.switching = instance.switching_cost() * static_cast<double>(switches);
  cost.total = cost.opening + cost.distance + cost.switching;
  return cost;
}

/// Number of (t, j) pairs with phi_t(j) != phi_{t+1}(j) for one client.
inline int switch_count(const Solution& s, int client) {
  int count = 0;
  for (std::size_t t = 0; t + 1 < s.assignment.size(); ++t)
    count += s.assignment[t][client] != s.assignment[t + 1][client];
  return count;
}

}  // namespace dynfl

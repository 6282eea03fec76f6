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

// LP relaxations of dynamic facility location.
//
// Fixed mode:
//   min  f sum_i y_i + sum_{t,i,j} d_t(i,j) x_tij + g sum_{t<T-1,i,j} z_tij
//   s.t. x_tij <= y_i,  sum_i x_tij = 1,  z_tij >= x_tij - x_(t+1)ij,  all >= 0
//
// Hourly mode replaces y_i with a per-step y_ti, paid f per step.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dynfl/fractional.hpp"
#include "dynfl/intervals.hpp"
#include "dynfl/lp.hpp"
#include "dynfl/model.hpp"

namespace dynfl {

class RelaxationInconsistent : public Error {
 public:
  using Error::Error;
};

/// Bijection between relaxation variables and LP columns. Columns are laid
/// out as y, then x, then z, each block in [t][i][j] order.
class VariableIndex {
 public:
  VariableIndex(OpeningMode mode, int n, int m, int T)
      : mode_(mode), n_(n), m_(m), T_(T) {}

  OpeningMode mode() const { return mode_; }
  int clients() const { return n_; }
  int facilities() const { return m_; }
  int horizon() const { return T_; }

  int y_count() const { return mode_ == OpeningMode::kFixed ? m_ : T_ * m_; }
  int x_count() const { return T_ * m_ * n_; }
  int z_count() const { return (T_ - 1) * m_ * n_; }
  int count() const { return y_count() + x_count() + z_count(); }

  int y(int i, int t = 0) const {
    return mode_ == OpeningMode::kFixed ? i : t * m_ + i;
  }
  int x(int t, int i, int j) const { return y_count() + (t * m_ + i) * n_ + j; }
  int z(int t, int i, int j) const {
    return y_count() + x_count() + (t * m_ + i) * n_ + j;
  }

  /// Column name for LP dumps, with 1-based indices (y_i, y_i_t, x_i_j_t, z_i_j_t).
  std::string name(int column) const {
    auto s = [](int v) { return std::to_string(v + 1); };
    if (column < y_count()) {
      if (mode_ == OpeningMode::kFixed) return "y_" + s(column);
      return "y_" + s(column % m_) + "_" + s(column / m_);
    }
    column -= y_count();
    const char* prefix = "x_";
    if (column >= x_count()) {
      column -= x_count();
      prefix = "z_";
    }
    int j = column % n_;
    int i = (column / n_) % m_;
    int t = column / (n_ * m_);
    return prefix + s(i) + "_" + s(j) + "_" + s(t);
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(count());
    for (int c = 0; c < count(); ++c) out.push_back(name(c));
    return out;
  }

 private:
  OpeningMode mode_;
  int n_, m_, T_;
};

struct RelaxationLp {
  LinearProgram lp;
  VariableIndex index;
};

namespace relaxation_detail {

inline RelaxationLp build(const Instance& inst, OpeningMode mode) {
  const int n = inst.clients(), m = inst.facilities(), T = inst.horizon();
  VariableIndex idx(mode, n, m, T);
  LinearProgram lp(idx.count());

  for (int c = 0; c < idx.y_count(); ++c) lp.set_objective(c, inst.opening_cost());
  for (int t = 0; t < T; ++t)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        lp.set_objective(idx.x(t, i, j), inst.distance(t, i, j));
        if (t + 1 < T) lp.set_objective(idx.z(t, i, j), inst.switching_cost());
      }

  // x_tij - y <= 0
  for (int t = 0; t < T; ++t)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        lp.add_constraint({{idx.x(t, i, j), 1.0}, {idx.y(i, t), -1.0}},
                          Relation::kLessEqual, 0.0);
  // sum_i x_tij = 1
  for (int t = 0; t < T; ++t)
    for (int j = 0; j < n; ++j) {
      std::vector<double> row(idx.count(), 0.0);
      for (int i = 0; i < m; ++i) row[idx.x(t, i, j)] = 1.0;
      lp.add_constraint(std::move(row), Relation::kEqual, 1.0);
    }
  // x_tij - x_(t+1)ij - z_tij <= 0
  for (int t = 0; t + 1 < T; ++t)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        lp.add_constraint(
            {{idx.x(t, i, j), 1.0}, {idx.x(t + 1, i, j), -1.0}, {idx.z(t, i, j), -1.0}},
            Relation::kLessEqual, 0.0);
  return {std::move(lp), idx};
}

}  // namespace relaxation_detail

inline RelaxationLp build_lp_fixed(const Instance& inst) {
  if (inst.mode() != OpeningMode::kFixed)
    throw Error("build_lp_fixed needs a fixed-mode instance");
  return relaxation_detail::build(inst, OpeningMode::kFixed);
}

inline RelaxationLp build_lp_hourly(const Instance& inst) {
  if (inst.mode() != OpeningMode::kHourly)
    throw Error("build_lp_hourly needs an hourly-mode instance");
  return relaxation_detail::build(inst, OpeningMode::kHourly);
}

inline RelaxationLp build_lp(const Instance& inst) {
  return relaxation_detail::build(inst, inst.mode());
}

// Tolerances of the structural checks on solver output.
inline constexpr double kRowSumTolerance = 1e-7;
inline constexpr double kBoundTolerance = 1e-9;

/// Unpacks an optimal LP solution and checks the relaxation's constraints.
inline FractionalSolution extract_fractional(const LpSolution& solution,
                                             const VariableIndex& idx) {
  if (solution.status != LpStatus::kOptimal)
    throw RelaxationInconsistent(std::string("LP status is ") + to_string(solution.status));
  if (solution.values.size() != static_cast<std::size_t>(idx.count()))
    throw RelaxationInconsistent("LP solution size differs from the variable index");

  const int n = idx.clients(), m = idx.facilities(), T = idx.horizon();
  FractionalSolution frac(idx.mode(), n, m, T);
  const auto& v = solution.values;
  for (int i = 0; i < m; ++i) {
    if (idx.mode() == OpeningMode::kFixed) {
      frac.y(i) = v[idx.y(i)];
    } else {
      for (int t = 0; t < T; ++t) frac.y(i, t) = v[idx.y(i, t)];
    }
  }
  for (int t = 0; t < T; ++t)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        frac.x(t, i, j) = v[idx.x(t, i, j)];
        if (t + 1 < T) frac.z(t, i, j) = v[idx.z(t, i, j)];
      }
  frac.lp_value = solution.objective_value;

  auto fail = [](const std::string& what, int t, int i, int j) {
    throw RelaxationInconsistent(what + " at t=" + std::to_string(t) +
                                 " i=" + std::to_string(i) + " j=" + std::to_string(j));
  };
  for (int t = 0; t < T; ++t)
    for (int j = 0; j < n; ++j) {
      double sum = 0;
      for (int i = 0; i < m; ++i) {
        double x = frac.x(t, i, j);
        sum += x;
        if (x < -kBoundTolerance) fail("negative x", t, i, j);
        if (x > frac.y(i, t) + kBoundTolerance) fail("x exceeds y", t, i, j);
        if (t + 1 < T) {
          double z = frac.z(t, i, j);
          if (z < -kBoundTolerance || z < x - frac.x(t + 1, i, j) - kBoundTolerance)
            fail("z below its lower bound", t, i, j);
        }
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance) fail("x row does not sum to 1", t, -1, j);
    }
  return frac;
}

struct Relaxation {
  RelaxationLp program;
  LpSolution lp_solution;
  FractionalSolution fractional;
};

/// Builds, solves and unpacks the relaxation matching the instance's mode.
inline Relaxation solve_relaxation(const Instance& inst) {
  Relaxation r{build_lp(inst), {}, {}};
  r.lp_solution = solve_lp(r.program.lp);
  r.fractional = extract_fractional(r.lp_solution, r.program.index);
  return r;
}

/// Every interval except each client's last carries at least 1/2 of
/// z-mass (up to `tolerance`), so each paid switch is backed by g/2 of LP cost.
inline bool check_fact2(const FractionalSolution& frac, const IntervalPartition& partition,
                        double tolerance = 1e-7) {
  for (int j = 0; j < static_cast<int>(partition.clients.size()); ++j) {
    const auto& ci = partition.clients[j];
    for (int k = 0; k + 1 < ci.count(); ++k) {
      double mass = 0;
      for (int t = ci.begin(k); t < ci.end(k); ++t)
        for (int i = 0; i < frac.facilities; ++i) mass += frac.z(t, i, j);
      if (mass < 0.5 - tolerance) return false;
    }
  }
  return true;
}

}  // namespace dynfl

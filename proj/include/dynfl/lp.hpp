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

// Dense two-phase primal simplex for small linear programs
//
//   minimize c.x  subject to  a_r.x (<=|=|>=) b_r,  x >= 0.
//
// Entering columns follow Dantzig's rule (most negative reduced cost,
// lowest index on ties) and fall back to Bland's rule for the rest of a
// phase once a long run of degenerate pivots is observed, which rules out
// cycling. The ratio test breaks ties by the lowest basic variable index.
// Every choice is index-ordered, so solves are deterministic.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dynfl/model.hpp"

namespace dynfl {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  std::vector<double> coefficients;
  Relation relation = Relation::kLessEqual;
  double rhs = 0;
};

class LinearProgram {
 public:
  explicit LinearProgram(int variables = 0)
      : objective_(static_cast<std::size_t>(variables), 0.0) {}

  int variables() const { return static_cast<int>(objective_.size()); }
  int rows() const { return static_cast<int>(constraints_.size()); }

  const std::vector<double>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  void set_objective(int var, double coefficient) { objective_.at(var) = coefficient; }

  void add_constraint(std::vector<double> coefficients, Relation relation,
                      double rhs) {
    if (coefficients.size() != objective_.size())
      throw Error("constraint row length differs from variable count");
    constraints_.push_back({std::move(coefficients), relation, rhs});
  }

  /// Adds a row given as (variable, coefficient) terms.
  void add_constraint(std::initializer_list<std::pair<int, double>> terms,
                      Relation relation, double rhs) {
    std::vector<double> row(objective_.size(), 0.0);
    for (auto [var, coef] : terms) row.at(var) += coef;
    constraints_.push_back({std::move(row), relation, rhs});
  }

  friend bool operator==(const LinearProgram&, const LinearProgram&) = default;

 private:
  std::vector<double> objective_;
  std::vector<Constraint> constraints_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;
  double objective_value = 0;
  // One multiplier per constraint row, in the row's original orientation:
  // <= rows carry duals <= 0, >= rows duals >= 0, equality rows are free.
  std::vector<double> duals;
  int iterations = 0;

  friend bool operator==(const LpSolution&, const LpSolution&) = default;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double cost_tolerance = 1e-9;
  double feasibility_tolerance = 1e-7;
  int degenerate_streak_before_bland = 50;
  long long max_iterations = 1'000'000;
};

namespace lp_detail {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& options)
      : opt_(options), n_(lp.variables()), rows_(lp.rows()) {
    // Column layout: structural | one slack/surplus per inequality row |
    // one artificial per row lacking a natural +1 basic column | rhs.
    sign_.assign(rows_, 1.0);
    std::vector<Relation> rel(rows_);
    for (int r = 0; r < rows_; ++r) {
      const auto& c = lp.constraints()[r];
      rel[r] = c.relation;
      if (c.rhs < 0) {
        sign_[r] = -1.0;
        if (c.relation == Relation::kLessEqual) rel[r] = Relation::kGreaterEqual;
        else if (c.relation == Relation::kGreaterEqual) rel[r] = Relation::kLessEqual;
      }
    }
    int slack_count = 0, artificial_count = 0;
    for (int r = 0; r < rows_; ++r) {
      if (rel[r] != Relation::kEqual) ++slack_count;
      if (rel[r] != Relation::kLessEqual) ++artificial_count;
    }
    first_artificial_ = n_ + slack_count;
    cols_ = first_artificial_ + artificial_count;
    width_ = cols_ + 1;
    a_.assign(static_cast<std::size_t>(rows_) * width_, 0.0);
    basis_.assign(rows_, -1);
    unit_column_.assign(rows_, -1);

    int next_slack = n_, next_artificial = first_artificial_;
    for (int r = 0; r < rows_; ++r) {
      const auto& c = lp.constraints()[r];
      double* row = &a_[static_cast<std::size_t>(r) * width_];
      for (int j = 0; j < n_; ++j) row[j] = sign_[r] * c.coefficients[j];
      row[cols_] = sign_[r] * c.rhs;
      if (rel[r] == Relation::kLessEqual) {
        row[next_slack] = 1.0;
        unit_column_[r] = basis_[r] = next_slack++;
      } else {
        if (rel[r] == Relation::kGreaterEqual) row[next_slack++] = -1.0;
        row[next_artificial] = 1.0;
        unit_column_[r] = basis_[r] = next_artificial++;
      }
    }
  }

  LpSolution solve(const LinearProgram& lp) {
    LpSolution out;
    // Phase 1: minimize the sum of artificials.
    if (first_artificial_ < cols_) {
      std::vector<double> phase1(cols_, 0.0);
      for (int j = first_artificial_; j < cols_; ++j) phase1[j] = 1.0;
      set_costs(phase1);
      if (!run(cols_, out.iterations)) {
        out.status = LpStatus::kUnbounded;  // cannot happen: phase 1 is bounded
        return out;
      }
      double infeasibility = 0;
      for (int r = 0; r < rows_; ++r)
        if (basis_[r] >= first_artificial_) infeasibility += rhs(r);
      double scale = 1.0;
      for (const auto& c : lp.constraints()) scale = std::max(scale, std::abs(c.rhs));
      if (infeasibility > opt_.feasibility_tolerance * scale) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
      evict_artificials();
    }
    // Phase 2: original costs, artificials may not re-enter.
    std::vector<double> phase2(cols_, 0.0);
    std::copy(lp.objective().begin(), lp.objective().end(), phase2.begin());
    set_costs(phase2);
    if (!run(first_artificial_, out.iterations)) {
      out.status = LpStatus::kUnbounded;
      return out;
    }

    out.status = LpStatus::kOptimal;
    out.values.assign(n_, 0.0);
    for (int r = 0; r < rows_; ++r)
      if (basis_[r] < n_) out.values[basis_[r]] = std::max(0.0, rhs(r));
    out.objective_value = 0;
    for (int j = 0; j < n_; ++j) out.objective_value += lp.objective()[j] * out.values[j];
    // The reduced cost of row r's initial unit column is -pi_r.
    out.duals.resize(rows_);
    for (int r = 0; r < rows_; ++r) out.duals[r] = -sign_[r] * reduced_[unit_column_[r]];
    return out;
  }

 private:
  double& at(int r, int j) { return a_[static_cast<std::size_t>(r) * width_ + j]; }
  double rhs(int r) const { return a_[static_cast<std::size_t>(r) * width_ + cols_]; }

  void set_costs(const std::vector<double>& costs) {
    costs_ = costs;
    reduced_ = costs;
    for (int r = 0; r < rows_; ++r) {
      double cb = costs_[basis_[r]];
      if (cb == 0) continue;
      const double* row = &a_[static_cast<std::size_t>(r) * width_];
      for (int j = 0; j < cols_; ++j) reduced_[j] -= cb * row[j];
    }
    for (int r = 0; r < rows_; ++r) reduced_[basis_[r]] = 0;
  }

  int entering(int limit, bool bland) const {
    double tol = opt_.cost_tolerance * cost_scale();
    int best = -1;
    double best_value = -tol;
    for (int j = 0; j < limit; ++j) {
      if (reduced_[j] < best_value) {
        best = j;
        if (bland) return j;
        best_value = reduced_[j];
      }
    }
    return best;
  }

  double cost_scale() const {
    double s = 1.0;
    for (double c : costs_) s = std::max(s, std::abs(c));
    return s;
  }

  int leaving(int col) const {
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows_; ++r) {
      double a = a_[static_cast<std::size_t>(r) * width_ + col];
      if (a <= opt_.pivot_tolerance) continue;
      double ratio = std::max(0.0, rhs(r)) / a;
      bool better = best < 0 || ratio < best_ratio - 1e-12 ||
                    (ratio <= best_ratio + 1e-12 && basis_[r] < basis_[best]);
      if (better) {
        best = r;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void pivot(int pr, int pc) {
    double* prow = &at(pr, 0);
    const double inv = 1.0 / prow[pc];
    for (int j = 0; j < width_; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (int r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      double* row = &at(r, 0);
      const double factor = row[pc];
      if (factor == 0) continue;
      for (int j = 0; j < width_; ++j) row[j] -= factor * prow[j];
      row[pc] = 0.0;
    }
    const double factor = reduced_[pc];
    if (factor != 0) {
      for (int j = 0; j < cols_; ++j) reduced_[j] -= factor * prow[j];
      reduced_[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  // Returns false when the objective is unbounded below.
  bool run(int entering_limit, int& iterations) {
    bool bland = false;
    int degenerate_streak = 0;
    for (long long it = 0; it < opt_.max_iterations; ++it) {
      int col = entering(entering_limit, bland);
      if (col < 0) return true;
      int row = leaving(col);
      if (row < 0) return false;
      if (rhs(row) <= opt_.pivot_tolerance) {
        if (++degenerate_streak >= opt_.degenerate_streak_before_bland) bland = true;
      } else {
        degenerate_streak = 0;
      }
      pivot(row, col);
      ++iterations;
    }
    throw Error("simplex iteration limit reached");
  }

  // Pivots zero-valued artificials out of the basis where possible. Rows
  // with no usable structural entry are redundant and keep their artificial.
  void evict_artificials() {
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < first_artificial_) continue;
      int best = -1;
      double best_abs = opt_.pivot_tolerance;
      for (int j = 0; j < first_artificial_; ++j) {
        double a = std::abs(at(r, j));
        if (a > best_abs) {
          best_abs = a;
          best = j;
        }
      }
      if (best >= 0) pivot(r, best);
    }
  }

  SimplexOptions opt_;
  int n_;
  int rows_;
  int cols_ = 0;
  int width_ = 0;
  int first_artificial_ = 0;
  std::vector<double> a_;
  std::vector<double> sign_;
  std::vector<int> basis_;
  std::vector<int> unit_column_;
  std::vector<double> costs_;
  std::vector<double> reduced_;
};

}  // namespace lp_detail

inline LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {}) {
  for (double c : lp.objective())
    if (!std::isfinite(c)) throw Error("non-finite objective coefficient");
  for (const auto& row : lp.constraints()) {
    if (!std::isfinite(row.rhs)) throw Error("non-finite right-hand side");
    for (double a : row.coefficients)
      if (!std::isfinite(a)) throw Error("non-finite constraint coefficient");
  }
  lp_detail::Tableau tableau(lp, options);
  return tableau.solve(lp);
}

/// Largest violation of any constraint or bound by `values`.
inline double max_primal_residual(const LinearProgram& lp,
                                  const std::vector<double>& values) {
  double worst = 0;
  for (double v : values) worst = std::max(worst, -v);
  for (const auto& c : lp.constraints()) {
    double lhs = 0;
    for (int j = 0; j < lp.variables(); ++j) lhs += c.coefficients[j] * values[j];
    double excess = lhs - c.rhs;
    switch (c.relation) {
      case Relation::kLessEqual: worst = std::max(worst, excess); break;
      case Relation::kGreaterEqual: worst = std::max(worst, -excess); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(excess)); break;
    }
  }
  return worst;
}

struct DualCertificate {
  bool valid = false;
  double dual_objective = 0;
  double duality_gap = 0;
  double max_dual_infeasibility = 0;
};

/// Checks that `solution.duals` is dual feasible and that its objective
/// matches the primal objective, which certifies optimality by weak duality.
inline DualCertificate certify_optimality(const LinearProgram& lp,
                                          const LpSolution& solution,
                                          double tolerance = 1e-6) {
  DualCertificate cert;
  if (solution.status != LpStatus::kOptimal ||
      solution.duals.size() != static_cast<std::size_t>(lp.rows()))
    return cert;
  std::vector<double> reduced = lp.objective();
  double worst = 0;
  for (int r = 0; r < lp.rows(); ++r) {
    const auto& c = lp.constraints()[r];
    const double pi = solution.duals[r];
    cert.dual_objective += pi * c.rhs;
    for (int j = 0; j < lp.variables(); ++j) reduced[j] -= pi * c.coefficients[j];
    if (c.relation == Relation::kLessEqual) worst = std::max(worst, pi);
    if (c.relation == Relation::kGreaterEqual) worst = std::max(worst, -pi);
  }
  for (double d : reduced) worst = std::max(worst, -d);
  cert.max_dual_infeasibility = worst;
  cert.duality_gap = std::abs(cert.dual_objective - solution.objective_value);
  const double scale = std::max(1.0, std::abs(solution.objective_value));
  cert.valid = worst <= tolerance * scale && cert.duality_gap <= tolerance * scale;
  return cert;
}

/// Writes the program in CPLEX LP text format for cross-checking with
/// external solvers. `names` may be empty, in which case x0, x1, ... are used.
inline void write_cplex_lp(std::ostream& os, const LinearProgram& lp,
                           const std::vector<std::string>& names = {}) {
  auto name = [&](int j) {
    return names.empty() ? "x" + std::to_string(j) : names[j];
  };
  auto terms = [&](const std::vector<double>& coef) {
    bool first = true;
    int on_line = 0;
    for (int j = 0; j < static_cast<int>(coef.size()); ++j) {
      if (coef[j] == 0) continue;
      double a = coef[j];
      os << (a < 0 ? " - " : (first ? " " : " + "));
      if (std::abs(a) != 1) os << std::abs(a) << ' ';
      os << name(j);
      first = false;
      if (++on_line % 8 == 0) os << "\n   ";
    }
    if (first) os << " 0 " << name(0);
  };
  os.precision(17);
  os << "\\ dynfl linear program\nMinimize\n obj:";
  terms(lp.objective());
  os << "\nSubject To\n";
  for (int r = 0; r < lp.rows(); ++r) {
    const auto& c = lp.constraints()[r];
    os << " c" << r << ':';
    terms(c.coefficients);
    switch (c.relation) {
      case Relation::kLessEqual: os << " <= "; break;
      case Relation::kEqual: os << " = "; break;
      case Relation::kGreaterEqual: os << " >= "; break;
    }
    os << c.rhs << '\n';
  }
  os << "End\n";
}

}  // namespace dynfl

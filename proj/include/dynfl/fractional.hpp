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

#include <cstddef>
#include <vector>

#include "dynfl/model.hpp"

namespace dynfl {

/// Fractional values of the relaxation variables.
///
///   y(i, t)    facility weight; t is ignored in fixed mode
///   x(t, i, j) share of client j served by facility i at step t
///   z(t, i, j) share leaving facility i between t and t+1, t < T-1
struct FractionalSolution {
  OpeningMode mode = OpeningMode::kFixed;
  int clients = 0;
  int facilities = 0;
  int horizon = 0;
  std::vector<double> y_values;  // [i] (fixed) or [t][i] (hourly)
  std::vector<double> x_values;  // [t][i][j]
  std::vector<double> z_values;  // [t][i][j], t < T-1
  double lp_value = 0;

  FractionalSolution() = default;
  FractionalSolution(OpeningMode mode_, int n, int m, int T)
      : mode(mode_),
        clients(n),
        facilities(m),
        horizon(T),
        y_values(static_cast<std::size_t>(mode_ == OpeningMode::kFixed ? 1 : T) * m, 0.0),
        x_values(static_cast<std::size_t>(T) * m * n, 0.0),
        z_values(static_cast<std::size_t>(T - 1) * m * n, 0.0) {}

  double& y(int i, int t = 0) { return y_values[y_offset(i, t)]; }
  double y(int i, int t = 0) const { return y_values[y_offset(i, t)]; }
  double& x(int t, int i, int j) { return x_values[xz_offset(t, i, j)]; }
  double x(int t, int i, int j) const { return x_values[xz_offset(t, i, j)]; }
  double& z(int t, int i, int j) { return z_values[xz_offset(t, i, j)]; }
  double z(int t, int i, int j) const { return z_values[xz_offset(t, i, j)]; }

  double y_sum() const {
    double s = 0;
    for (double v : y_values) s += v;
    return s;
  }

 private:
  std::size_t y_offset(int i, int t) const {
    return mode == OpeningMode::kFixed
               ? static_cast<std::size_t>(i)
               : static_cast<std::size_t>(t) * facilities + i;
  }
  std::size_t xz_offset(int t, int i, int j) const {
    return (static_cast<std::size_t>(t) * facilities + i) * clients + j;
  }
};

}  // namespace dynfl

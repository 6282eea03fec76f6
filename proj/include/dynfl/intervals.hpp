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
#include <vector>

#include "dynfl/fractional.hpp"

namespace dynfl {

// Slack granted to the 1/2 mass test so that LP round-off at a vertex with
// exactly 1/2 mass does not split an interval.
inline constexpr double kHalfMassSlack = 1e-9;

/// Greedy time segmentation of one client.
///
/// Interval k covers steps [boundaries[k], boundaries[k+1]); the first
/// boundary is 0 and the last is T. `min_share[k][i]` is the minimum of
/// x(t, i, j) over the interval.
struct ClientIntervals {
  std::vector<int> boundaries;
  std::vector<std::vector<double>> min_share;

  int count() const { return static_cast<int>(boundaries.size()) - 1; }
  int begin(int k) const { return boundaries[k]; }
  int end(int k) const { return boundaries[k + 1]; }

  double mass(int k) const {
    double s = 0;
    for (double v : min_share[k]) s += v;
    return s;
  }

  friend bool operator==(const ClientIntervals&, const ClientIntervals&) = default;
};

struct IntervalPartition {
  std::vector<ClientIntervals> clients;

  friend bool operator==(const IntervalPartition&, const IntervalPartition&) = default;
};

/// Cuts [0, T) for client j into maximal intervals whose per-facility
/// minimum shares still sum to at least 1/2.
///
/// The running sum of minima only decreases as an interval grows, so the
/// largest admissible end is found by a single forward scan.
inline ClientIntervals partition_intervals(const FractionalSolution& frac, int j) {
  const int T = frac.horizon;
  const int m = frac.facilities;
  ClientIntervals out;
  out.boundaries.push_back(0);
  int start = 0;
  while (start < T) {
    std::vector<double> running(m);
    for (int i = 0; i < m; ++i) running[i] = frac.x(start, i, j);
    int end = start + 1;
    while (end < T) {
      double mass = 0;
      for (int i = 0; i < m; ++i) mass += std::min(running[i], frac.x(end, i, j));
      if (mass < 0.5 - kHalfMassSlack) break;
      for (int i = 0; i < m; ++i) running[i] = std::min(running[i], frac.x(end, i, j));
      ++end;
    }
    out.boundaries.push_back(end);
    out.min_share.push_back(std::move(running));
    start = end;
  }
  return out;
}

inline IntervalPartition partition_intervals(const FractionalSolution& frac) {
  IntervalPartition p;
  p.clients.reserve(frac.clients);
  for (int j = 0; j < frac.clients; ++j) p.clients.push_back(partition_intervals(frac, j));
  return p;
}

}  // namespace dynfl

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

// Instance generators. In the classroom and crossing families every client
// also hosts a candidate facility (facility i sits where client i is), so
// d_t(i, j) is the distance between clients i and j at step t.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dynfl/model.hpp"
#include "dynfl/random.hpp"

namespace dynfl {

inline constexpr double kDefaultNear = 0.0;
inline constexpr double kDefaultFar = 1e3;
inline constexpr double kDefaultStep = 10.0;

namespace generator_detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInstance(what);
}

}  // namespace generator_detail

/// k groups of s students plus one teacher (the last client), who sits with
/// group (t mod k) at step t. Same-group pairs are `near` apart, others `far`.
inline Instance gen_classroom(int groups, int group_size, int horizon,
                             double near = kDefaultNear, double far = kDefaultFar,
                             double opening_cost = 1, double switching_cost = 1,
                             OpeningMode mode = OpeningMode::kFixed) {
  using generator_detail::require;
  require(groups >= 2, "classroom needs at least 2 groups");
  require(group_size >= 1, "classroom group size must be >= 1");
  require(horizon >= 1, "classroom horizon must be >= 1");
  require(near >= 0 && far > near, "classroom distances need far > near >= 0");

  const int n = groups * group_size + 1;
  const int teacher = n - 1;
  std::vector<double> d(static_cast<std::size_t>(horizon) * n * n);
  for (int t = 0; t < horizon; ++t) {
    auto group_of = [&](int c) { return c == teacher ? t % groups : c / group_size; };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[(static_cast<std::size_t>(t) * n + i) * n + j] =
            i == j ? 0.0 : (group_of(i) == group_of(j) ? near : far);
  }
  double sentinel = default_sentinel(n, n, horizon, opening_cost, switching_cost, far);
  return Instance(n, n, horizon, opening_cost, switching_cost, mode, sentinel, std::move(d));
}

/// Two groups of s clients walking toward and past each other on a line:
/// group one stands at (t+1)*step and group two at (T-t)*step, t = 0..T-1.
inline Instance gen_crossing(int group_size, int horizon, double step = kDefaultStep,
                            double opening_cost = 1, double switching_cost = 1,
                            OpeningMode mode = OpeningMode::kFixed) {
  using generator_detail::require;
  require(group_size >= 1, "crossing group size must be >= 1");
  require(horizon >= 2, "crossing horizon must be >= 2");
  require(step > 0, "crossing step must be > 0");

  const int n = 2 * group_size;
  std::vector<double> d(static_cast<std::size_t>(horizon) * n * n);
  for (int t = 0; t < horizon; ++t) {
    auto position = [&](int c) {
      return c < group_size ? (t + 1) * step : (horizon - t) * step;
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[(static_cast<std::size_t>(t) * n + i) * n + j] = std::abs(position(i) - position(j));
  }
  double sentinel = default_sentinel(n, n, horizon, opening_cost, switching_cost,
                                     step * (horizon - 1));
  return Instance(n, n, horizon, opening_cost, switching_cost, mode, sentinel, std::move(d));
}

/// A set system over elements 0..universe-1.
struct SetSystem {
  int universe = 0;
  std::vector<std::vector<int>> sets;
};

inline std::vector<int> uncovered_elements(const SetSystem& system) {
  std::vector<char> covered(system.universe, 0);
  for (const auto& set : system.sets)
    for (int e : set) covered.at(e) = 1;
  std::vector<int> out;
  for (int e = 0; e < system.universe; ++e)
    if (!covered[e]) out.push_back(e);
  return out;
}

/// Set cover as a single-client fixed-mode instance: one step per element,
/// one facility per set. The client is at distance 0 from facility i at
/// step t when set i contains element t and at the infinity sentinel
/// otherwise; switching is free. Finite-cost solutions are exactly covers.
///
/// Systems with uncovered elements are accepted; every solution of the
/// resulting instance then pays the sentinel.
inline Instance gen_setcover_gadget(const SetSystem& system, double opening_cost = 1) {
  using generator_detail::require;
  require(system.universe >= 1, "set cover universe must be non-empty");
  require(!system.sets.empty(), "set cover needs at least one set");
  const int T = system.universe;
  const int m = static_cast<int>(system.sets.size());
  const double sentinel = default_sentinel(1, m, T, opening_cost, 0.0, 0.0);
  std::vector<double> d(static_cast<std::size_t>(T) * m, sentinel);
  for (int i = 0; i < m; ++i) {
    for (int e : system.sets[i]) {
      require(e >= 0 && e < T, "set element out of range");
      d[static_cast<std::size_t>(e) * m + i] = 0.0;
    }
  }
  return Instance(1, m, T, opening_cost, 0.0, OpeningMode::kFixed, sentinel, std::move(d));
}

/// Clients and facilities take independent random walks in the unit square,
/// reflecting off its sides; each coordinate moves by a uniform amount in
/// [-step, step] per time step. Distances are Euclidean.
inline Instance gen_random_walk(int clients, int facilities, int horizon, double step,
                                double opening_cost, double switching_cost,
                                std::uint64_t seed, OpeningMode mode = OpeningMode::kFixed) {
  using generator_detail::require;
  require(clients >= 1 && facilities >= 1 && horizon >= 1, "random walk counts must be >= 1");
  require(step >= 0, "random walk step must be >= 0");

  Rng rng(seed);
  struct Point { double x, y; };
  auto reflect = [](double v) {
    while (v < 0 || v > 1) v = v < 0 ? -v : 2 - v;
    return v;
  };
  std::vector<Point> client(clients), facility(facilities);
  for (auto& p : client) p = {uniform01(rng), uniform01(rng)};
  for (auto& p : facility) p = {uniform01(rng), uniform01(rng)};

  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(horizon) * facilities * clients);
  for (int t = 0; t < horizon; ++t) {
    if (t > 0) {
      for (auto* group : {&client, &facility})
        for (auto& p : *group) {
          p.x = reflect(p.x + (2 * uniform01(rng) - 1) * step);
          p.y = reflect(p.y + (2 * uniform01(rng) - 1) * step);
        }
    }
    for (const auto& fp : facility)
      for (const auto& cp : client) d.push_back(std::hypot(fp.x - cp.x, fp.y - cp.y));
  }
  double sentinel = default_sentinel(clients, facilities, horizon, opening_cost,
                                     switching_cost, std::sqrt(2.0));
  return Instance(clients, facilities, horizon, opening_cost, switching_cost, mode, sentinel,
                  std::move(d));
}

}  // namespace dynfl

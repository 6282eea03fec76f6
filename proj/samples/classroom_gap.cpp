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

// Shows how a static (per-snapshot) solution falls behind the dynamic
// optimum on the classroom family as the horizon grows, then rounds the
// LP relaxation of a small random instance.

#include <cstdio>

#include "dynfl/dynfl.hpp"

int main() {
  std::printf("%4s %10s %10s %8s\n", "T", "dynamic", "static", "ratio");
  for (int T : {5, 10, 20}) {
    dynfl::Instance inst = dynfl::gen_classroom(5, 4, T, 0, 1000);
    double opt = dynfl::exact_fixed(inst).cost.total;
    double stat = dynfl::static_baseline(inst).cost.total;
    std::printf("%4d %10.1f %10.1f %8.3f\n", T, opt, stat, stat / opt);
  }

  dynfl::Instance walk = dynfl::gen_random_walk(4, 4, 6, 0.2, 0.5, 0.3, 11);
  dynfl::Relaxation rel = dynfl::solve_relaxation(walk);
  dynfl::Rng rng(dynfl::derive_seed(1, 0));
  dynfl::Solution rounded = dynfl::round_fixed(walk, rel.fractional, rng);
  std::printf("\nrandom walk: LP %.4f  rounded %.4f  bound %.4f\n", rel.fractional.lp_value,
              dynfl::evaluate_cost(walk, rounded).total,
              dynfl::approximation_factor(walk.clients(), walk.horizon()) * rel.fractional.lp_value);
  return 0;
}

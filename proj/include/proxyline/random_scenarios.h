// Copyright 2026 The Proxyline Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROXYLINE_RANDOM_SCENARIOS_H_
#define PROXYLINE_RANDOM_SCENARIOS_H_

#include <cstdint>
#include <random>

#include "proxyline/core_model.h"

namespace proxyline {

struct RandomScenarioOptions {
  std::size_t min_proxies = 1;
  std::size_t max_proxies = 4;
  std::size_t min_followers = 0;
  std::size_t max_followers = 6;
  int lower = -10;  // positions are k * step for k in [lower, upper]
  int upper = 10;
  double step = 1.0;
  bool discrete_space = false;
  // Uniform reals in [lower*step, upper*step] instead of lattice points.
  bool real_positions = false;
};

Scenario RandomScenario(std::mt19937_64& rng, const RandomScenarioOptions& options);

// Proxies strictly on both sides of med(p) and none at it.
bool HasBothSidesNoPeakAtMedian(const Scenario& scenario);

// Redraws until HasBothSidesNoPeakAtMedian holds (needs max_proxies >= 2).
Scenario RandomManipulableScenario(std::mt19937_64& rng,
                                   const RandomScenarioOptions& options);

}  // namespace proxyline

#endif  // PROXYLINE_RANDOM_SCENARIOS_H_

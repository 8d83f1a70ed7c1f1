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

#include "proxyline/random_scenarios.h"

namespace proxyline {

Scenario RandomScenario(std::mt19937_64& rng, const RandomScenarioOptions& o) {
  if (o.min_proxies < 1 || o.min_proxies > o.max_proxies ||
      o.min_followers > o.max_followers || o.lower > o.upper) {
    throw ConfigError("inconsistent random scenario options");
  }
  std::uniform_int_distribution<std::size_t> proxies(o.min_proxies, o.max_proxies);
  std::uniform_int_distribution<std::size_t> followers(o.min_followers, o.max_followers);
  std::uniform_int_distribution<int> lattice(o.lower, o.upper);
  std::uniform_real_distribution<double> real(o.lower * o.step, o.upper * o.step);
  auto draw = [&] {
    return o.real_positions ? real(rng) : lattice(rng) * o.step;
  };
  const std::size_t m = proxies(rng);
  const std::size_t n = followers(rng);
  std::vector<Position> peaks(m);
  std::vector<Position> fs(n);
  for (Position& x : peaks) x = draw();
  for (Position& x : fs) x = draw();
  Space space = o.discrete_space ? Space::Discrete(o.step) : Space::Continuous();
  return Scenario(std::move(peaks), std::move(fs), space);
}

bool HasBothSidesNoPeakAtMedian(const Scenario& scenario) {
  const Position med = TrueMedian(scenario);
  bool left = false;
  bool right = false;
  for (Position p : scenario.proxy_peaks()) {
    if (p == med) return false;
    left |= p < med;
    right |= p > med;
  }
  return left && right;
}

Scenario RandomManipulableScenario(std::mt19937_64& rng,
                                   const RandomScenarioOptions& options) {
  if (options.max_proxies < 2) {
    throw ConfigError("both-side scenarios need at least two proxies");
  }
  RandomScenarioOptions o = options;
  o.min_proxies = std::max<std::size_t>(2, o.min_proxies);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Scenario s = RandomScenario(rng, o);
    if (HasBothSidesNoPeakAtMedian(s)) return s;
  }
  throw Error("could not draw a both-side scenario");
}

}  // namespace proxyline

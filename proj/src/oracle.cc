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

#include "proxyline/oracle.h"

#include <algorithm>
#include <cmath>

#include "proxyline/partial_info.h"

namespace proxyline {

void GridSpec::Validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ConfigError("grid step must be positive and finite");
  }
  if (!std::isfinite(lower) || !std::isfinite(upper) || upper < lower) {
    throw ConfigError("grid bounds must be finite with lower <= upper");
  }
  if ((upper - lower) / step > kMaxGridPoints) {
    throw BudgetExceeded("grid exceeds the 1e6 point budget");
  }
}

std::size_t GridSpec::size() const {
  return static_cast<std::size_t>(std::floor((upper - lower) / step + 1e-9)) + 1;
}

GridSpec DefaultScanGrid(const Scenario& scenario, double step) {
  std::vector<double> all = scenario.proxy_peaks();
  all.insert(all.end(), scenario.followers().begin(), scenario.followers().end());
  const auto [lo, hi] = std::minmax_element(all.begin(), all.end());
  double span = *hi - *lo;
  if (span == 0) span = 1;
  return {*lo - span, *hi + span, step};
}

std::optional<Deviation> OracleBestDeviation(const Scenario& scenario,
                                             const DeclaredState& state,
                                             ProxyId proxy,
                                             const GridSpec& grid) {
  grid.Validate();
  const Position p = scenario.peak(proxy);
  const double status_quo = std::abs(WmWinner(scenario, state).position - p);
  std::optional<Deviation> best;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Position x = grid.at(i);
    const Position outcome = WmWinner(scenario, state.With(proxy, x)).position;
    const double d = std::abs(outcome - p);
    if (d < status_quo && (!best || d < status_quo - best->improvement)) {
      best = Deviation{x, outcome, status_quo - d};
    }
  }
  return best;
}

DominanceVerdict OracleDominatingCheck(const ObservedState& observed,
                                       const DominanceQuery& query,
                                       const MedianInterval* belief_interval) {
  if (query.samples < 1) throw ConfigError("need at least one profile sample");
  SamplingOptions options;
  options.seed = query.seed;
  options.median_filter = belief_interval;
  auto profiles = SampleConsistentProfiles(observed, query.follower_count,
                                           query.samples, options);
  const DeclaredState& s = observed.declared;
  const DeclaredState moved = s.With(query.proxy, query.candidate);
  bool strict = false;
  for (const auto& profile : profiles) {
    Scenario scenario(s.positions(), profile);
    const double before = std::abs(WmWinner(scenario, s).position - query.peak);
    const double after = std::abs(WmWinner(scenario, moved).position - query.peak);
    if (after > before) return NotWeaklyBetter{profile};
    if (after < before) strict = true;
  }
  if (!strict) return NeverStrictlyBetter{};
  return Dominating{};
}

}  // namespace proxyline

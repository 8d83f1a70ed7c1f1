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

#include "proxyline/core_model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace proxyline {

Space Space::Discrete(double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ConfigError("discrete space needs a positive finite step");
  }
  return Space(Kind::kDiscrete, step);
}

bool Space::Admits(Position x) const {
  if (!std::isfinite(x)) return false;
  if (kind_ == Kind::kContinuous) return true;
  double k = std::round(x / step_);
  return k * step_ == x;
}

Scenario::Scenario(std::vector<Position> proxy_peaks,
                   std::vector<Position> followers, Space space,
                   TieBreakRule tie_break)
    : proxy_peaks_(std::move(proxy_peaks)),
      followers_(std::move(followers)),
      space_(space),
      tie_break_(tie_break) {
  if (proxy_peaks_.empty()) {
    throw ConfigError("scenario needs at least one proxy");
  }
  auto check = [this](const std::vector<Position>& xs, const char* what) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!space_.Admits(xs[i])) {
        std::ostringstream msg;
        msg << what << "[" << i << "] = " << xs[i]
            << " is not an admissible position";
        throw ConfigError(msg.str());
      }
    }
  };
  check(proxy_peaks_, "proxy_peaks");
  check(followers_, "followers");
}

Scenario Scenario::WithFollowers(std::vector<Position> followers) const {
  return Scenario(proxy_peaks_, std::move(followers), space_, tie_break_);
}

DeclaredState DeclaredState::With(ProxyId j, Position x) const {
  std::vector<Position> next = declared_;
  next.at(j) = x;
  return DeclaredState(std::move(next));
}

std::vector<ProxyId> Delegate(const Scenario& scenario,
                              const DeclaredState& state) {
  const auto& s = state.positions();
  std::vector<ProxyId> assignment;
  assignment.reserve(scenario.num_followers());
  for (Position p : scenario.followers()) {
    ProxyId best = 0;
    double best_distance = std::abs(s[0] - p);
    for (ProxyId j = 1; j < s.size(); ++j) {
      double d = std::abs(s[j] - p);
      if (d < best_distance) {
        best = j;
        best_distance = d;
      }
    }
    assignment.push_back(best);
  }
  return assignment;
}

std::vector<double> DelegationWeights(const Scenario& scenario,
                                      const DeclaredState& state) {
  std::vector<double> weights(state.size(), 1.0);
  for (ProxyId j : Delegate(scenario, state)) weights[j] += 1.0;
  return weights;
}

WeightedMedianResult WeightedMedian(std::span<const double> values,
                                    std::span<const double> weights,
                                    const TieBreakRule& /*tie_break*/) {
  if (values.empty()) throw Error("empty electorate");
  if (values.size() != weights.size()) {
    throw Error("weighted median: values and weights differ in length");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a < b;
  });
  double total = 0.0;
  for (double w : weights) total += w;
  const double half = total / 2.0;

  double below = 0.0;
  for (std::size_t g = 0; g < order.size();) {
    std::size_t end = g;
    double group_weight = 0.0;
    while (end < order.size() && values[order[end]] == values[order[g]]) {
      group_weight += weights[order[end]];
      ++end;
    }
    double above = total - below - group_weight;
    if (below <= half && above <= half) {
      // order is sorted by (value, index): the group's first is its lowest id.
      return {order[g], values[order[g]]};
    }
    below += group_weight;
    g = end;
  }
  // Unreachable for positive weights: the group straddling W/2 qualifies.
  throw Error("weighted median: no qualifying element (non-positive weights?)");
}

double LowerMedian(std::vector<double> values) {
  if (values.empty()) throw Error("empty electorate");
  std::size_t rank = (values.size() + 1) / 2;  // ceil(W/2), 1-based
  std::nth_element(values.begin(), values.begin() + (rank - 1), values.end());
  return values[rank - 1];
}

Position UnweightedMedian(const Scenario& scenario,
                          const DeclaredState& state) {
  std::vector<double> all = state.positions();
  all.insert(all.end(), scenario.followers().begin(),
             scenario.followers().end());
  return LowerMedian(std::move(all));
}

Position TrueMedian(const Scenario& scenario) {
  return UnweightedMedian(scenario, DeclaredState::Truthful(scenario));
}

Winner WmWinner(const Scenario& scenario, const DeclaredState& state) {
  std::vector<double> weights = DelegationWeights(scenario, state);
  WeightedMedianResult r =
      WeightedMedian(state.positions(), weights, scenario.tie_break());
  return {r.index, r.value};
}

ProxyId NearestProxyToMedian(const Scenario& scenario,
                             const DeclaredState& state) {
  const Position med = UnweightedMedian(scenario, state);
  ProxyId best = 0;
  double best_distance = std::abs(state[0] - med);
  for (ProxyId j = 1; j < state.size(); ++j) {
    double d = std::abs(state[j] - med);
    if (d < best_distance) {
      best = j;
      best_distance = d;
    }
  }
  return best;
}

}  // namespace proxyline

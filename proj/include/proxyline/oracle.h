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

#ifndef PROXYLINE_ORACLE_H_
#define PROXYLINE_ORACLE_H_

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "proxyline/core_model.h"
#include "proxyline/interval_set.h"

// Brute-force verifiers. Nothing here goes through the analytic
// better-response machinery; outcomes are recomputed from the weighted
// median definition at every grid point or sampled profile.

namespace proxyline {

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline constexpr double kMaxGridPoints = 1e6;

struct GridSpec {
  double lower;
  double upper;
  double step;

  // Throws BudgetExceeded when (upper - lower) / step > 1e6.
  void Validate() const;
  std::size_t size() const;
  double at(std::size_t i) const { return lower + static_cast<double>(i) * step; }
};

// [min - span, max + span] over all true positions, span = max - min (or 1
// when every position coincides).
GridSpec DefaultScanGrid(const Scenario& scenario, double step);

struct Deviation {
  Position position;
  Position outcome;
  double improvement;  // |wm(s) - p_j| - |outcome - p_j| > 0
};

// Grid position minimizing |outcome - p_j|, first in grid order on ties;
// present only when strictly better than the status quo.
std::optional<Deviation> OracleBestDeviation(const Scenario& scenario,
                                             const DeclaredState& state,
                                             ProxyId proxy,
                                             const GridSpec& grid);

struct ObservedState;  // partial_info.h
struct MedianInterval;

struct DominanceQuery {
  ProxyId proxy;
  Position peak;
  Position candidate;
  std::size_t follower_count;
  std::size_t samples = 500;
  std::uint64_t seed = 1;
};

struct Dominating {};
struct NotWeaklyBetter {
  std::vector<Position> profile;
};
struct NeverStrictlyBetter {};
using DominanceVerdict =
    std::variant<Dominating, NotWeaklyBetter, NeverStrictlyBetter>;

// Samples follower profiles consistent with the observation (and with the
// median interval when given) and checks both dominance conditions.
DominanceVerdict OracleDominatingCheck(const ObservedState& observed,
                                       const DominanceQuery& query,
                                       const MedianInterval* belief_interval = nullptr);

}  // namespace proxyline

#endif  // PROXYLINE_ORACLE_H_

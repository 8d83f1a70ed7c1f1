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

#include "proxyline/metrics.h"

#include <cmath>
#include <stdexcept>

namespace proxyline {

double SocialCost(const Scenario& scenario, Position outcome) {
  if (!std::isfinite(outcome)) throw Error("social cost of a non-finite outcome");
  double total = 0.0;
  for (Position p : scenario.proxy_peaks()) total += std::abs(p - outcome);
  for (Position p : scenario.followers()) total += std::abs(p - outcome);
  return total;
}

double Delta(const Scenario& scenario, const DeclaredState& state) {
  return std::abs(UnweightedMedian(scenario, state) -
                  WmWinner(scenario, state).position);
}

OutcomeReport MakeOutcomeReport(const Scenario& scenario, Position outcome) {
  return {outcome, std::abs(outcome - TrueMedian(scenario)),
          SocialCost(scenario, outcome)};
}

}  // namespace proxyline

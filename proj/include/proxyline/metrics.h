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

#ifndef PROXYLINE_METRICS_H_
#define PROXYLINE_METRICS_H_

#include "proxyline/core_model.h"

namespace proxyline {

struct OutcomeReport {
  Position outcome;
  double distance_to_true_median;
  double social_cost;
};

// Sum over all voters of |p_i - outcome|, proxies counted at their peaks.
double SocialCost(const Scenario& scenario, Position outcome);

// |med(s, p_N) - wm(s)|
double Delta(const Scenario& scenario, const DeclaredState& state);

OutcomeReport MakeOutcomeReport(const Scenario& scenario, Position outcome);

}  // namespace proxyline

#endif  // PROXYLINE_METRICS_H_

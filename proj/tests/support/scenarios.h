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

#ifndef PROXYLINE_TESTS_SUPPORT_SCENARIOS_H_
#define PROXYLINE_TESTS_SUPPORT_SCENARIOS_H_

#include <vector>

#include "proxyline/core_model.h"

namespace fixtures {

using proxyline::Scenario;
using proxyline::Space;

inline Scenario Example1() { return Scenario({-1, 1.5}, {0}); }

inline Scenario AppendixA(Space space = Space::Discrete(1)) {
  return Scenario({-11, -13, -13, -13, 12}, {5, 5, 1, 0}, space);
}

inline Scenario AppendixB() { return Scenario({-30, 90}, {-50, 0, 10}); }

inline Scenario Fig3() {
  std::vector<double> followers = {-45, -48, -36, -25, -10, -6, -2, 0};
  for (int k = 1; k <= 11; ++k) followers.push_back(4.0 * k);
  return Scenario({-40, -30, -20, -15}, followers);
}

inline Scenario Fig5() { return Scenario({-4, 5}, {0}); }

inline Scenario Fig7Top() { return Scenario({-20, 10, 50}, {-50, 40}); }
inline Scenario Fig7Bottom() { return Scenario({-20, 10, 50}, {-50, 0}); }

// k followers with proxy j at 0, k + 2 followers at 1, proxy j' at `other`.
inline Scenario Footnote(int k, double other) {
  std::vector<double> followers(k, 0.0);
  for (int i = 0; i < k + 2; ++i) followers.push_back(1.0);
  return Scenario({0.0, other}, followers);
}

// The median moves when proxy 2 crosses it.
inline Scenario CrossingMedian() { return Scenario({-2, 4}, {-1, 1, 3}); }

}  // namespace fixtures

#endif  // PROXYLINE_TESTS_SUPPORT_SCENARIOS_H_

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

#ifndef PROXYLINE_CLI_CHECK_H_
#define PROXYLINE_CLI_CHECK_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "proxyline/cli/scenario_file.h"

namespace proxyline::cli {

struct InvariantRow {
  std::string name;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
  std::string first_failure;

  void Fail(const std::string& what);
};

struct CheckReport {
  std::vector<InvariantRow> rows;

  bool ok() const;
  void Merge(const CheckReport& other);
  void Print(std::ostream& out) const;
};

// The suite on one scenario. Rows whose preconditions do not hold (for
// example lattice invariants on real-valued data) count as skipped.
CheckReport CheckScenario(const Scenario& scenario);

// The suite on the file's scenario, plus an observation comparison when
// the file lists alternate followers.
CheckReport CheckFile(const ScenarioFile& file);

// `count` scenarios; scenario i is drawn from (seed, i), so the report does
// not depend on `jobs`.
CheckReport CheckRandom(std::size_t count, std::uint64_t seed, std::size_t jobs);

}  // namespace proxyline::cli

#endif  // PROXYLINE_CLI_CHECK_H_

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

#ifndef PROXYLINE_CLI_REPLICATE_H_
#define PROXYLINE_CLI_REPLICATE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "proxyline/cli/report.h"

namespace proxyline::cli {

struct Assertion {
  std::string what;
  bool ok;
  std::string detail;
};

struct Replication {
  std::string name;
  Summary quantities;  // flat; compared against the expected file
  std::vector<Assertion> assertions;
  std::vector<std::string> diffs;  // against fixtures/expected/<name>.json
  bool expected_found = false;

  bool ok() const;
};

inline constexpr double kExpectedTolerance = 1e-6;

const std::vector<std::string>& ReplicationNames();
bool IsReplicationName(const std::string& name);

// Loads <root>/<name>.json, computes the quantities and checks the stated
// values, then diffs against <root>/expected/<name>.json.
Replication Replicate(const std::string& name, const std::filesystem::path& fixture_root);

// Numbers match within `tolerance` (absolute), everything else exactly.
// Keys present on only one side are reported too.
std::vector<std::string> DiffQuantities(const Summary& expected, const Summary& actual,
                                        double tolerance);

}  // namespace proxyline::cli

#endif  // PROXYLINE_CLI_REPLICATE_H_

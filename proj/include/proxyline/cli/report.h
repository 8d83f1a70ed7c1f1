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

#ifndef PROXYLINE_CLI_REPORT_H_
#define PROXYLINE_CLI_REPORT_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "proxyline/cli/scenario_file.h"
#include "proxyline/dynamics.h"
#include "proxyline/partial_info.h"

namespace proxyline::cli {

using Summary = nlohmann::ordered_json;

struct RunResult {
  ScenarioFile file;
  Scenario scenario;
  DynamicsTrace dynamics;
  std::vector<MedianInterval> intervals;  // partial information only
};

// Runs the file's dynamics in its mode.
RunResult Execute(const ScenarioFile& file);

// One JSON record per move, newline-terminated.
std::string TraceLines(const RunResult& result);

// Flat document: scalars, plus the final positions as a number array.
Summary MakeSummary(const RunResult& result);
std::string SummaryText(const Summary& summary);

// Checks a summary document against its schema; unknown keys, missing
// required keys and wrong types raise SchemaError.
Summary ParseSummary(const std::string& text, const std::string& origin);

}  // namespace proxyline::cli

#endif  // PROXYLINE_CLI_REPORT_H_

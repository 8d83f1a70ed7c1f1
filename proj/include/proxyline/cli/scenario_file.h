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

#ifndef PROXYLINE_CLI_SCENARIO_FILE_H_
#define PROXYLINE_CLI_SCENARIO_FILE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "proxyline/core_model.h"
#include "proxyline/dynamics.h"

namespace proxyline::cli {

inline constexpr int kSchemaVersion = 1;

// Schema or syntax problem in an input document. `where` is a JSON pointer,
// `line` is 1-based (0 when unknown).
class SchemaError : public Error {
 public:
  SchemaError(std::string origin, std::string where, std::size_t line,
              const std::string& message);

  const std::string& where() const { return where_; }
  std::size_t line() const { return line_; }

 private:
  std::string where_;
  std::size_t line_;
};

enum class Mode { kFullInfo, kPartialInfo };

// Scenario drawn from `seed` instead of listed explicitly.
struct RandomScenarioBlock {
  std::size_t min_proxies = 2;
  std::size_t max_proxies = 4;
  std::size_t min_followers = 0;
  std::size_t max_followers = 6;
  int lower = -10;
  int upper = 10;
  bool real_positions = false;
};

struct ScenarioFile {
  std::string name;
  std::string description;
  std::vector<Position> peaks;
  std::vector<Position> followers;
  std::optional<RandomScenarioBlock> random;
  // Second follower profile for observation comparisons.
  std::optional<std::vector<Position>> alternate_followers;
  Space space = Space::Continuous();
  TieBreakRule tie_break;
  std::vector<PolicySpec> policies{PolicySpec::Monotone(0.5)};
  Scheduler scheduler;
  RunOptions run;
  double alpha = 0.5;  // Big/Small threshold for meta-steps
  std::uint64_t seed = 1;
  Mode mode = Mode::kFullInfo;
  std::optional<std::string> trace_path;
  std::optional<std::string> summary_path;

  // The explicit scenario, or the one `seed` draws.
  Scenario MakeScenario() const;
};

// `origin` names the document in diagnostics.
ScenarioFile ParseScenarioFile(const std::string& text, const std::string& origin);
ScenarioFile LoadScenarioFile(const std::filesystem::path& path);

std::string ModeName(Mode mode);

}  // namespace proxyline::cli

#endif  // PROXYLINE_CLI_SCENARIO_FILE_H_

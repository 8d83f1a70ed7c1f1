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

#ifndef PROXYLINE_CLI_COMMANDS_H_
#define PROXYLINE_CLI_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace proxyline::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInvalid = 2;

struct GlobalOptions {
  std::size_t jobs = 1;
  std::optional<std::filesystem::path> output_dir;
};

struct RunOverrides {
  std::optional<std::size_t> max_steps;
  std::optional<std::uint64_t> seed;
};

// PROXYLINE_FIXTURES when set, else the fixtures directory of the build.
std::filesystem::path FixtureRoot();

// Writes <name>.trace.jsonl and <name>.summary.json (or the file's output
// paths) under the output directory and prints the summary.
int CmdRun(const std::filesystem::path& path, const RunOverrides& overrides,
           const GlobalOptions& global, std::ostream& out, std::ostream& err);

int CmdCheckFile(const std::filesystem::path& path, const GlobalOptions& global,
                 std::ostream& out, std::ostream& err);
int CmdCheckRandom(std::size_t count, std::uint64_t seed, const GlobalOptions& global,
                   std::ostream& out, std::ostream& err);

// With `update_expected` the computed quantities replace the expected file.
int CmdReplicate(const std::string& name, bool update_expected, const GlobalOptions& global,
                 std::ostream& out, std::ostream& err);

}  // namespace proxyline::cli

#endif  // PROXYLINE_CLI_COMMANDS_H_

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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "proxyline/cli/commands.h"

int main(int argc, char** argv) {
  namespace cli = proxyline::cli;
  CLI::App app{"Proxy voting on the line: dynamics, invariant checks and replications"};
  app.require_subcommand(1);

  cli::GlobalOptions global;
  std::string output_dir;
  app.add_option("--jobs", global.jobs, "Worker threads for check --random")
      ->check(CLI::PositiveNumber);
  app.add_option("--output-dir", output_dir, "Directory for traces and summaries");

  std::string run_file;
  cli::RunOverrides overrides;
  std::size_t max_steps = 0;
  std::uint64_t run_seed = 0;
  CLI::App* run = app.add_subcommand("run", "Run the dynamics of a scenario file");
  run->add_option("file", run_file, "Scenario file (schema_version 1)")->required();
  CLI::Option* max_steps_opt = run->add_option("--max-steps", max_steps, "Override run.max_steps");
  CLI::Option* seed_opt = run->add_option("--seed", run_seed, "Override run.seed");

  std::string check_file;
  std::size_t random_count = 0;
  std::uint64_t check_seed = 1;
  CLI::App* check = app.add_subcommand("check", "Run the invariant suite");
  CLI::Option* file_opt = check->add_option("file", check_file, "Scenario file");
  CLI::Option* random_opt =
      check->add_option("--random", random_count, "Number of random scenarios");
  check->add_option("--seed", check_seed, "Seed for --random");
  file_opt->excludes(random_opt);
  random_opt->excludes(file_opt);

  std::string name;
  bool update_expected = false;
  CLI::App* replicate = app.add_subcommand("replicate", "Replicate a named fixture");
  replicate->add_option("name", name, "Fixture name")->required();
  replicate->add_flag("--update-expected", update_expected,
                      "Overwrite the expected-output file with the computed quantities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInvalid;
  }
  if (!output_dir.empty()) global.output_dir = output_dir;

  if (*run) {
    if (*max_steps_opt) overrides.max_steps = max_steps;
    if (*seed_opt) overrides.seed = run_seed;
    return cli::CmdRun(run_file, overrides, global, std::cout, std::cerr);
  }
  if (*check) {
    if (*random_opt) return cli::CmdCheckRandom(random_count, check_seed, global, std::cout, std::cerr);
    if (*file_opt) return cli::CmdCheckFile(check_file, global, std::cout, std::cerr);
    std::cerr << "error: check needs a file or --random N\n";
    return cli::kExitInvalid;
  }
  return cli::CmdReplicate(name, update_expected, global, std::cout, std::cerr);
}

// Copyright 2026 The moralsim Authors
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

// Command-line front end: moralsim {run,validate,sweep} CONFIG [options].

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "moralsim/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Iterated social dilemmas with moral learning agents"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(MORALSIM_VERSION_STRING));

  std::string config_path;
  moralsim::RunOptions options;
  std::string out_dir;

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
    cmd->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    cmd->add_flag("--force", options.force, "Write into a non-empty output directory");
    cmd->add_option("--workers", options.workers, "Parallel worker threads")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* run = app.add_subcommand("run", "Run an experiment");
  add_run_flags(run);

  CLI::App* validate = app.add_subcommand("validate", "Check a config and classify its game");
  validate->add_option("config", config_path, "Experiment config (JSON)")->required();

  std::string param;
  std::vector<double> values;
  CLI::App* sweep = app.add_subcommand("sweep", "Run once per value of a numeric field");
  add_run_flags(sweep);
  sweep->add_option("--param", param, "Field path, e.g. agents.util.reward.beta")
      ->required();
  sweep->add_option("--values", values, "Values to sweep, comma separated")
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);
  options.out_dir = out_dir;

  if (*run) return moralsim::CmdRun(config_path, options, std::cout, std::cerr);
  if (*validate) return moralsim::CmdValidate(config_path, std::cout, std::cerr);
  return moralsim::CmdSweep(config_path, param, values, options, std::cout, std::cerr);
}

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

#ifndef MORALSIM_COMMANDS_HPP_
#define MORALSIM_COMMANDS_HPP_

// The run, validate and sweep commands. Each returns a process exit code and
// writes diagnostics to `err`.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "moralsim/config.hpp"

namespace moralsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitRefused = 2;

struct RunOptions {
  // Overrides the config's output_dir when non-empty.
  std::filesystem::path out_dir;
  // Allow writing into an existing non-empty directory.
  bool force = false;
  int workers = 1;
};

// Writes config.effective.json, summary.csv, traces.csv and run.jsonl.
int CmdRun(const std::filesystem::path& config_path, const RunOptions& options,
           std::ostream& out, std::ostream& err);

// Validates the config and reports the dilemma traits of its game.
int CmdValidate(const std::filesystem::path& config_path, std::ostream& out,
                std::ostream& err);

// One sub-run per value in <out>/<field>=<value>/.
int CmdSweep(const std::filesystem::path& config_path, const std::string& field_path,
             const std::vector<double>& values, const RunOptions& options,
             std::ostream& out, std::ostream& err);

// Runs an already loaded config into `dir`, which must exist.
void RunInto(const LoadedConfig& config, const std::filesystem::path& dir, int workers);

}  // namespace moralsim

#endif  // MORALSIM_COMMANDS_HPP_

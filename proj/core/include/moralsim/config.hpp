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

#ifndef MORALSIM_CONFIG_HPP_
#define MORALSIM_CONFIG_HPP_

// Experiment configuration files.
//
// A config is a JSON object. Unknown keys are rejected at every level and
// every problem is reported with its field path, not just the first one.
//
//   {
//     "game": "IPD",                        // or {"name": ..., "payoffs":
//                                           //   {"CC": [r, c], "CD": ..., "DC": ..., "DD": ...}}
//     "horizon": 50000,
//     "master_seed": 1,
//     "seeds": 10,                          // count (0..n-1) or explicit list
//     "window_fraction": 0.1,
//     "exploring_start_prob": 0.0,
//     "output_dir": "runs/ipd",
//     "learner_defaults": {"alpha": 0.1, "gamma": 0.8, "epsilon_start": 1.0,
//                          "epsilon_end": 0.01, "epsilon_decay": "linear",
//                          "decay_fraction": 0.8, "q_init": 0.0},
//     "reward_defaults": {"xi": 5, "beta": 0.5, "xi_hat": 1},
//     "norms": [{"id": "cc", "when": ["CC", "CD"],
//                "verdicts": {"C": "legal", "D": "forbidden"}}],
//     "agents": {
//       "util": {"type": "learner", "reward": {"kind": "utilitarian"},
//                "learner": {"alpha": 0.2}, "norms": ["cc"],
//                "supervision": "always"},
//       "tft":  {"type": "scripted", "policy": "TFT"}
//     },
//     "pairings": [{"M": "util", "O": "tft"}]  // or {"round_robin": [ids],
//                                               //     "self_play": true}
//   }
//
// States in "when" are "init" or two letters: the opponent's previous action
// followed by the agent's own.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "moralsim/errors.hpp"
#include "moralsim/simulation.hpp"

namespace moralsim {

struct ConfigIssue {
  std::string path;  // JSON pointer of the offending field, "" for the document
  std::string message;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

struct LoadedConfig {
  ExperimentConfig experiment;
  std::string output_dir;
  // The config with every default filled in; loading it reproduces
  // `experiment` exactly.
  std::string effective_json;
};

// Throws ConfigError (kind InvalidConfig) listing every problem, or Error with
// kind Io when the file cannot be read.
LoadedConfig ParseConfig(std::string_view text);
LoadedConfig LoadConfig(const std::filesystem::path& path);

std::string ReadTextFile(const std::filesystem::path& path);

// Returns `text` with the numeric field at `field_path` set to `value`. The
// path is dotted ("agents.util.reward.beta") or a JSON pointer. Fields only
// present after defaults are filled in are added to the document, or set in
// the effective config when the document cannot hold them. Throws
// InvalidInput when the field is missing or not numeric.
std::string SetNumericField(std::string_view text, std::string_view field_path,
                            double value);

}  // namespace moralsim

#endif  // MORALSIM_CONFIG_HPP_

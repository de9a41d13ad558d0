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

#ifndef MORALSIM_SIMULATION_HPP_
#define MORALSIM_SIMULATION_HPP_

// Match and experiment orchestration. A match is one continuous learning run
// of T simultaneous moves; an experiment is the cross product of pairings and
// seeds, each cell independent of the others.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "moralsim/games.hpp"
#include "moralsim/learners.hpp"
#include "moralsim/metrics.hpp"
#include "moralsim/rewards.hpp"
#include "moralsim/supervisor.hpp"
#include "moralsim/trace.hpp"

namespace moralsim {

enum class SupervisionMode {
  kAlways,          // filter while learning and when extracting the policy
  kDeploymentOnly,  // learn unfiltered, filter only the deployed policy
};

struct LearnerAgent {
  LearnerConfig config;
  MoralRewardSpec reward = MoralRewardSpec::Selfish();
  std::optional<NormBook> norms;
  SupervisionMode supervision = SupervisionMode::kAlways;
};

struct AgentSpec {
  std::string id;
  std::variant<LearnerAgent, ScriptedPolicy> policy;

  static AgentSpec Learner(std::string id, MoralRewardSpec reward,
                           LearnerConfig config = {});
  static AgentSpec Scripted(std::string id, ScriptedPolicy policy);

  bool IsLearner() const { return std::holds_alternative<LearnerAgent>(policy); }
  const LearnerAgent& learner() const { return std::get<LearnerAgent>(policy); }
  LearnerAgent& learner() { return std::get<LearnerAgent>(policy); }
  const ScriptedPolicy& scripted() const { return std::get<ScriptedPolicy>(policy); }
  // Reward the agent is credited with in the trace. Scripted agents are
  // recorded as selfish.
  MoralRewardSpec RewardSpec() const;
  // "learner:<reward kind>" or "scripted:<policy>".
  std::string KindLabel() const;
  // Throws InvalidSpec.
  void Validate() const;
};

struct MatchOptions {
  // Probability, after each step, of restarting the episode from a uniformly
  // drawn state (Initial included). Zero gives the plain iterated game. A
  // positive value guarantees every state keeps being visited, which tabular
  // Q-learning needs to identify values of states a fixed opponent would
  // otherwise never produce.
  double exploring_start_prob = 0.0;
};

// Identifies the random streams of one experiment cell.
struct SeedKey {
  std::uint64_t master_seed = 0;
  std::uint64_t pairing_index = 0;
  std::uint64_t seed = 0;
};

struct MatchResult {
  MatchTrace trace;
  std::optional<QTable> q_m;  // final tables, learners only
  std::optional<QTable> q_o;
};

// Runs T steps. Throws InvalidInput when T < 1 and InvalidSpec for invalid
// agents.
MatchResult RunMatch(const AgentSpec& agent_m, const AgentSpec& agent_o,
                     const PayoffMatrix& matrix, int horizon, const SeedKey& key,
                     const MatchOptions& options = {});
inline MatchResult RunMatch(const AgentSpec& agent_m, const AgentSpec& agent_o,
                            const PayoffMatrix& matrix, int horizon, std::uint64_t seed,
                            const MatchOptions& options = {}) {
  return RunMatch(agent_m, agent_o, matrix, horizon, SeedKey{seed, 0, 0}, options);
}

// Value-iteration oracle for `agent` (a learner) facing `opponent`. Throws
// Unsupported when the opponent is itself a learner, since its policy is not
// stationary.
QTable SolveAgainst(const PayoffMatrix& matrix, const AgentSpec& agent,
                    const AgentSpec& opponent, double tolerance);

// Strategy label of an agent after a match: the greedy map of its final
// table (filtered by its norms when supervised), or the scripted policy's
// name.
std::string FinalStrategy(const AgentSpec& agent, const std::optional<QTable>& table);

struct Pairing {
  std::string id;
  AgentSpec agent_m;
  AgentSpec agent_o;
};

struct ExperimentConfig {
  PayoffMatrix game = MakeGame("IPD");
  int horizon = 50'000;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> seeds = {0};
  std::vector<Pairing> pairings;
  double window_fraction = kDefaultWindowFraction;
  MatchOptions match_options;

  // Throws InvalidConfig describing the first problem.
  void Validate() const;
};

struct CellResult {
  std::size_t pairing_index = 0;
  std::string pairing_id;
  std::uint64_t seed = 0;
  MatchResult match;
  OutcomeSummary summary;
  std::string strategy_m;
  std::string strategy_o;
};

struct ExperimentResult {
  // Pairing-major, seeds in configured order.
  std::vector<CellResult> cells;
};

// Runs every (pairing, seed) cell on up to `workers` threads. Results do not
// depend on the worker count or scheduling.
ExperimentResult RunExperiment(const ExperimentConfig& config, int workers = 1);

// Recomputes the payoffs and intrinsic rewards of every row from the matrix
// and the agents' reward specs; returns the index of the first inconsistent
// row, if any.
std::optional<std::size_t> FirstInconsistentRow(const MatchTrace& trace,
                                                const PayoffMatrix& matrix,
                                                const AgentSpec& agent_m,
                                                const AgentSpec& agent_o,
                                                double tolerance = 0.0);

}  // namespace moralsim

#endif  // MORALSIM_SIMULATION_HPP_

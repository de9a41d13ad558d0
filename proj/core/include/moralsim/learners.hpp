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

#ifndef MORALSIM_LEARNERS_HPP_
#define MORALSIM_LEARNERS_HPP_

// Tabular Q-learning over the five observable states, scripted opponents,
// and a value-iteration solver used as an independent check on learning.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "moralsim/games.hpp"
#include "moralsim/random.hpp"
#include "moralsim/rewards.hpp"

namespace moralsim {

enum class EpsilonDecay { kLinear, kExponential };

std::string_view EpsilonDecayName(EpsilonDecay decay);
std::optional<EpsilonDecay> ParseEpsilonDecay(std::string_view name);

struct LearnerConfig {
  double learning_rate = 0.1;
  double discount = 0.8;
  double epsilon_start = 1.0;
  double epsilon_end = 0.01;
  EpsilonDecay decay = EpsilonDecay::kLinear;
  // Fraction of the total steps over which epsilon moves from start to end;
  // it stays at epsilon_end afterwards.
  double decay_fraction = 0.8;
  double q_init = 0.0;

  // Throws InvalidSpec naming the offending field.
  void Validate() const;

  // Exploration rate for step `step` of a run that lasts `total_steps`.
  double EpsilonAt(long long step, long long total_steps) const;

  friend bool operator==(const LearnerConfig&, const LearnerConfig&) = default;
};

class QTable {
 public:
  static constexpr int kNumEntries = GameState::kNumStates * 2;

  explicit QTable(double initial = 0.0);

  double Get(GameState s, Action a) const { return values_[s.index()][Index(a)]; }
  void Set(GameState s, Action a, double v) { values_[s.index()][Index(a)] = v; }
  double MaxValue(GameState s) const;
  // Actions whose value equals the state's maximum.
  ActionSet GreedyActions(GameState s) const;
  ActionSet GreedyActions(GameState s, ActionSet allowed) const;

  // Q(s,a) += alpha * (r + gamma * max_a' Q(s', a') - Q(s,a)).
  void Update(GameState s, Action a, double reward, GameState next,
              double learning_rate, double discount);

  bool AllFinite() const;

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::array<std::array<double, 2>, GameState::kNumStates> values_{};
};

QTable QInit(const LearnerConfig& config);

// Epsilon-greedy over {C, D}; ties among greedy actions are broken uniformly.
Action SelectAction(const QTable& table, GameState s, double epsilon, Rng& rng);
// Epsilon-greedy restricted to a non-empty action set.
Action SelectAction(const QTable& table, GameState s, double epsilon,
                    ActionSet allowed, Rng& rng);

enum class ScriptedKind { kAllC, kAllD, kTitForTat, kRandom };

struct ScriptedPolicy {
  ScriptedKind kind = ScriptedKind::kAllC;
  double p_cooperate = 0.5;  // kRandom only

  static ScriptedPolicy AllC() { return {ScriptedKind::kAllC, 1.0}; }
  static ScriptedPolicy AllD() { return {ScriptedKind::kAllD, 0.0}; }
  static ScriptedPolicy TitForTat() { return {ScriptedKind::kTitForTat, 0.5}; }
  static ScriptedPolicy Random(double p) { return {ScriptedKind::kRandom, p}; }

  // Throws InvalidSpec when p_cooperate is outside [0, 1].
  void Validate() const;
  // "AllC", "AllD", "TFT" or "Random(p)".
  std::string Name() const;
  // Probability of cooperating in state s (from this policy's own seat).
  double CooperationProbability(GameState s) const;

  friend bool operator==(const ScriptedPolicy&, const ScriptedPolicy&) = default;
};

// Parses "AllC", "AllD", "TFT" or "Random" (p supplied separately).
std::optional<ScriptedKind> ParseScriptedKind(std::string_view name);

// `s` is the scripted player's own observation. Draws from `rng` only for
// kRandom.
Action ScriptedAction(const ScriptedPolicy& policy, GameState s, Rng& rng);

// Optimal action values for M facing a fixed scripted opponent, where M is
// rewarded by `reward` and discounts by `discount` < 1. Iterates Bellman
// optimality backups until the sup-norm error bound drops below `tolerance`.
// Throws InvalidInput for discount outside [0, 1).
QTable ValueIterationOracle(const PayoffMatrix& matrix, const ScriptedPolicy& opponent,
                            const MoralRewardSpec& reward, double discount,
                            double tolerance);

// Greedy action per state; empty where the two actions are within
// `tie_tolerance` of each other.
using GreedyMap = std::array<std::optional<Action>, GameState::kNumStates>;
GreedyMap Greedy(const QTable& table, double tie_tolerance = 0.0);

}  // namespace moralsim

#endif  // MORALSIM_LEARNERS_HPP_

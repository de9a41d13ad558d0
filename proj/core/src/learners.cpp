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

#include "moralsim/learners.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "moralsim/errors.hpp"

namespace moralsim {

namespace {

[[noreturn]] void InvalidSpec(const std::string& what) {
  throw Error(ErrorKind::kInvalidSpec, what);
}

bool InUnit(double v) { return v >= 0.0 && v <= 1.0; }

Action UniformAction(ActionSet set, Rng& rng) {
  if (set.Size() == 1) return set.Contains(Action::kCooperate) ? Action::kCooperate
                                                                : Action::kDefect;
  return rng.Below(2) == 0 ? Action::kCooperate : Action::kDefect;
}

}  // namespace

std::string_view EpsilonDecayName(EpsilonDecay decay) {
  return decay == EpsilonDecay::kLinear ? "linear" : "exponential";
}

std::optional<EpsilonDecay> ParseEpsilonDecay(std::string_view name) {
  if (name == "linear") return EpsilonDecay::kLinear;
  if (name == "exponential") return EpsilonDecay::kExponential;
  return std::nullopt;
}

void LearnerConfig::Validate() const {
  for (auto [v, name] : {std::pair{learning_rate, "alpha"}, {discount, "gamma"},
                         {epsilon_start, "epsilon_start"}, {epsilon_end, "epsilon_end"},
                         {decay_fraction, "decay_fraction"}, {q_init, "q_init"}}) {
    if (!std::isfinite(v)) InvalidSpec(std::string(name) + " must be finite");
  }
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) InvalidSpec("alpha must be in (0, 1]");
  if (!(discount >= 0.0 && discount < 1.0)) InvalidSpec("gamma must be in [0, 1)");
  if (!InUnit(epsilon_start)) InvalidSpec("epsilon_start must be in [0, 1]");
  if (!InUnit(epsilon_end)) InvalidSpec("epsilon_end must be in [0, 1]");
  if (epsilon_start < epsilon_end) InvalidSpec("epsilon_start must be >= epsilon_end");
  if (!(decay_fraction > 0.0 && decay_fraction <= 1.0)) {
    InvalidSpec("decay_fraction must be in (0, 1]");
  }
  if (decay == EpsilonDecay::kExponential && epsilon_end == 0.0 && epsilon_start > 0.0) {
    InvalidSpec("exponential decay needs epsilon_end > 0");
  }
}

double LearnerConfig::EpsilonAt(long long step, long long total_steps) const {
  const double span = std::max(1.0, decay_fraction * static_cast<double>(total_steps));
  const double progress = std::min(1.0, static_cast<double>(step) / span);
  if (progress >= 1.0) return epsilon_end;
  if (decay == EpsilonDecay::kLinear) {
    return epsilon_start + (epsilon_end - epsilon_start) * progress;
  }
  if (epsilon_start == 0.0) return 0.0;
  return epsilon_start * std::pow(epsilon_end / epsilon_start, progress);
}

QTable::QTable(double initial) {
  for (auto& row : values_) row.fill(initial);
}

double QTable::MaxValue(GameState s) const {
  const auto& row = values_[s.index()];
  return std::max(row[0], row[1]);
}

ActionSet QTable::GreedyActions(GameState s) const {
  return GreedyActions(s, ActionSet::All());
}

ActionSet QTable::GreedyActions(GameState s, ActionSet allowed) const {
  ActionSet best;
  double best_value = -HUGE_VAL;
  for (Action a : allowed.ToVector()) {
    const double v = Get(s, a);
    if (v > best_value) {
      best = ActionSet::Of(a);
      best_value = v;
    } else if (v == best_value) {
      best.Insert(a);
    }
  }
  return best;
}

void QTable::Update(GameState s, Action a, double reward, GameState next,
                    double learning_rate, double discount) {
  double& q = values_[s.index()][Index(a)];
  q += learning_rate * (reward + discount * MaxValue(next) - q);
}

bool QTable::AllFinite() const {
  for (const auto& row : values_) {
    for (double v : row) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

QTable QInit(const LearnerConfig& config) { return QTable(config.q_init); }

Action SelectAction(const QTable& table, GameState s, double epsilon, Rng& rng) {
  return SelectAction(table, s, epsilon, ActionSet::All(), rng);
}

Action SelectAction(const QTable& table, GameState s, double epsilon,
                    ActionSet allowed, Rng& rng) {
  if (allowed.Empty()) {
    throw Error(ErrorKind::kInvalidInput, "cannot select from an empty action set");
  }
  // One exploration draw per decision regardless of set size keeps the
  // stream layout independent of supervision.
  if (rng.Uniform() < epsilon) return UniformAction(allowed, rng);
  return UniformAction(table.GreedyActions(s, allowed), rng);
}

void ScriptedPolicy::Validate() const {
  if (kind == ScriptedKind::kRandom && !(p_cooperate >= 0.0 && p_cooperate <= 1.0)) {
    InvalidSpec("random policy p_cooperate must be in [0, 1]");
  }
}

std::string ScriptedPolicy::Name() const {
  switch (kind) {
    case ScriptedKind::kAllC:
      return "AllC";
    case ScriptedKind::kAllD:
      return "AllD";
    case ScriptedKind::kTitForTat:
      return "TFT";
    case ScriptedKind::kRandom: {
      std::ostringstream os;
      os << "Random(" << p_cooperate << ")";
      return os.str();
    }
  }
  return "?";
}

double ScriptedPolicy::CooperationProbability(GameState s) const {
  switch (kind) {
    case ScriptedKind::kAllC:
      return 1.0;
    case ScriptedKind::kAllD:
      return 0.0;
    case ScriptedKind::kTitForTat:
      return (s.IsInitial() || s.prev_opponent() == Action::kCooperate) ? 1.0 : 0.0;
    case ScriptedKind::kRandom:
      return p_cooperate;
  }
  return 0.0;
}

std::optional<ScriptedKind> ParseScriptedKind(std::string_view name) {
  if (name == "AllC") return ScriptedKind::kAllC;
  if (name == "AllD") return ScriptedKind::kAllD;
  if (name == "TFT") return ScriptedKind::kTitForTat;
  if (name == "Random") return ScriptedKind::kRandom;
  return std::nullopt;
}

Action ScriptedAction(const ScriptedPolicy& policy, GameState s, Rng& rng) {
  if (policy.kind == ScriptedKind::kRandom) {
    return rng.Bernoulli(policy.p_cooperate) ? Action::kCooperate : Action::kDefect;
  }
  return policy.CooperationProbability(s) > 0.5 ? Action::kCooperate : Action::kDefect;
}

QTable ValueIterationOracle(const PayoffMatrix& matrix, const ScriptedPolicy& opponent,
                            const MoralRewardSpec& reward, double discount,
                            double tolerance) {
  if (!(discount >= 0.0 && discount < 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "value iteration needs gamma in [0, 1)");
  }
  if (!(tolerance > 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "tolerance must be positive");
  }
  opponent.Validate();
  reward.Validate();

  // Expected immediate reward and successor distribution do not change
  // between sweeps, so tabulate them once.
  struct Outcome {
    double probability;
    double reward;
    GameState next;
  };
  std::array<std::array<std::array<Outcome, 2>, 2>, GameState::kNumStates> model{};
  for (GameState s : GameState::All()) {
    const double p_coop = opponent.CooperationProbability(s.Mirror());
    for (Action own : kAllActions) {
      for (Action opp : kAllActions) {
        const double prob = opp == Action::kCooperate ? p_coop : 1.0 - p_coop;
        const PayoffPair pay = Payoff(matrix, own, opp);
        const RewardContext ctx{own, s.PrevOpponentOrNone(), pay.own, pay.opp};
        // Skip evaluation of impossible branches so that degenerate payoffs
        // the opponent never produces do not raise.
        const double r = prob > 0.0 ? EvaluateReward(reward, ctx) : 0.0;
        model[s.index()][Index(own)][Index(opp)] = {prob, r, GameState::After(opp, own)};
      }
    }
  }

  QTable q(0.0);
  // ||Q_{k+1} - Q*|| <= gamma / (1 - gamma) * ||Q_{k+1} - Q_k||.
  const double stop = discount > 0.0 ? tolerance * (1.0 - discount) / discount : HUGE_VAL;
  for (int sweep = 0; sweep < 1'000'000; ++sweep) {
    QTable next(0.0);
    double change = 0.0;
    for (GameState s : GameState::All()) {
      for (Action own : kAllActions) {
        double v = 0.0;
        for (const Outcome& o : model[s.index()][Index(own)]) {
          if (o.probability == 0.0) continue;
          v += o.probability * (o.reward + discount * q.MaxValue(o.next));
        }
        next.Set(s, own, v);
        change = std::max(change, std::abs(v - q.Get(s, own)));
      }
    }
    q = next;
    if (change <= stop) break;
  }
  return q;
}

GreedyMap Greedy(const QTable& table, double tie_tolerance) {
  GreedyMap out;
  for (GameState s : GameState::All()) {
    const double c = table.Get(s, Action::kCooperate);
    const double d = table.Get(s, Action::kDefect);
    if (std::abs(c - d) <= tie_tolerance) continue;
    out[s.index()] = c > d ? Action::kCooperate : Action::kDefect;
  }
  return out;
}

}  // namespace moralsim

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

#include "moralsim/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "moralsim/errors.hpp"

namespace moralsim {

namespace {

struct Decision {
  Action action = Action::kCooperate;
  double epsilon = 0.0;
  bool deadlock = false;
};

// Per-match state of one player. Sees only its own spec, its own
// observations and the payoffs the environment reports.
class AgentRunner {
 public:
  AgentRunner(const AgentSpec& spec, Rng rng, long long total_steps)
      : spec_(spec), rng_(rng), total_steps_(total_steps) {
    if (spec_.IsLearner()) {
      table_ = QInit(spec_.learner().config);
      reward_ = spec_.learner().reward;
    } else {
      reward_ = MoralRewardSpec::Selfish();
    }
  }

  Decision Act(GameState s, long long step) {
    if (!spec_.IsLearner()) return {ScriptedAction(spec_.scripted(), s, rng_), 0.0, false};
    const LearnerAgent& learner = spec_.learner();
    Decision d;
    d.epsilon = learner.config.EpsilonAt(step, total_steps_);
    if (learner.norms && learner.supervision == SupervisionMode::kAlways) {
      const SupervisedChoice choice =
          SupervisedSelect(*learner.norms, *table_, s, d.epsilon, rng_);
      d.action = choice.action;
      d.deadlock = choice.deadlock;
    } else {
      d.action = SelectAction(*table_, s, d.epsilon, rng_);
    }
    return d;
  }

  // Returns the intrinsic reward; learners also update their table with it.
  double Observe(GameState s, Action own, double own_payoff, double opp_payoff,
                 GameState next) {
    const RewardContext ctx{own, s.PrevOpponentOrNone(), own_payoff, opp_payoff};
    const double reward = EvaluateReward(reward_, ctx);
    if (table_) {
      const LearnerConfig& c = spec_.learner().config;
      table_->Update(s, own, reward, next, c.learning_rate, c.discount);
    }
    return reward;
  }

  const std::optional<QTable>& table() const { return table_; }

 private:
  const AgentSpec& spec_;
  Rng rng_;
  long long total_steps_;
  MoralRewardSpec reward_;
  std::optional<QTable> table_;
};

bool UsesEqualityTerm(const MoralRewardSpec& spec) {
  switch (spec.kind()) {
    case RewardKind::kVirtueEquality:
    case RewardKind::kVirtueMixed:
      return true;
    case RewardKind::kComposite:
      return std::any_of(spec.terms().begin(), spec.terms().end(),
                         [](const auto& t) { return UsesEqualityTerm(t.spec); });
    default:
      return false;
  }
}

}  // namespace

AgentSpec AgentSpec::Learner(std::string id, MoralRewardSpec reward,
                             LearnerConfig config) {
  LearnerAgent learner;
  learner.config = config;
  learner.reward = std::move(reward);
  return {std::move(id), std::move(learner)};
}

AgentSpec AgentSpec::Scripted(std::string id, ScriptedPolicy policy) {
  return {std::move(id), policy};
}

MoralRewardSpec AgentSpec::RewardSpec() const {
  return IsLearner() ? learner().reward : MoralRewardSpec::Selfish();
}

std::string AgentSpec::KindLabel() const {
  if (IsLearner()) return "learner:" + std::string(RewardKindName(learner().reward.kind()));
  return "scripted:" + scripted().Name();
}

void AgentSpec::Validate() const {
  if (IsLearner()) {
    learner().config.Validate();
    learner().reward.Validate();
  } else {
    scripted().Validate();
  }
}

MatchResult RunMatch(const AgentSpec& agent_m, const AgentSpec& agent_o,
                     const PayoffMatrix& matrix, int horizon, const SeedKey& key,
                     const MatchOptions& options) {
  if (horizon < 1) throw Error(ErrorKind::kInvalidInput, "horizon must be at least 1");
  agent_m.Validate();
  agent_o.Validate();
  const double restart_prob = options.exploring_start_prob;
  if (!(restart_prob >= 0.0 && restart_prob <= 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "exploring_start_prob must be in [0, 1]");
  }

  AgentRunner m(agent_m, DeriveRng(key.master_seed, key.pairing_index, key.seed, kAgentM),
                horizon);
  AgentRunner o(agent_o, DeriveRng(key.master_seed, key.pairing_index, key.seed, kAgentO),
                horizon);
  Rng env_rng = DeriveRng(key.master_seed, key.pairing_index, key.seed, kEnvironmentStream);

  IteratedGameEnv env(matrix, horizon);
  GameState state_m = env.Reset();
  GameState state_o = env.state_o();

  MatchResult result;
  result.trace.rows.reserve(static_cast<std::size_t>(horizon));
  for (int t = 0; t < horizon; ++t) {
    const Decision dm = m.Act(state_m, t);
    const Decision d_o = o.Act(state_o, t);
    const StepResult step = env.Step(dm.action, d_o.action);

    TraceRow row;
    row.state_m = state_m;
    row.action_m = dm.action;
    row.action_o = d_o.action;
    row.extrinsic_m = step.reward_m;
    row.extrinsic_o = step.reward_o;
    row.intrinsic_m =
        m.Observe(state_m, dm.action, step.reward_m, step.reward_o, step.next_state_m);
    row.intrinsic_o =
        o.Observe(state_o, d_o.action, step.reward_o, step.reward_m, step.next_state_o);
    row.epsilon_m = dm.epsilon;
    row.epsilon_o = d_o.epsilon;
    row.deadlock_m = dm.deadlock;
    row.deadlock_o = d_o.deadlock;
    result.trace.rows.push_back(row);

    state_m = step.next_state_m;
    state_o = step.next_state_o;
    if (restart_prob > 0.0 && env_rng.Bernoulli(restart_prob)) {
      const auto all = GameState::All();
      state_m = env.ResetTo(all[env_rng.Below(all.size())]);
      state_o = env.state_o();
    }
  }
  result.q_m = m.table();
  result.q_o = o.table();
  return result;
}

QTable SolveAgainst(const PayoffMatrix& matrix, const AgentSpec& agent,
                    const AgentSpec& opponent, double tolerance) {
  if (!agent.IsLearner()) {
    throw Error(ErrorKind::kInvalidInput, "oracle needs a learning agent");
  }
  if (opponent.IsLearner()) {
    throw Error(ErrorKind::kUnsupported,
                "oracle needs a stationary opponent; '" + opponent.id + "' is a learner");
  }
  return ValueIterationOracle(matrix, opponent.scripted(), agent.learner().reward,
                              agent.learner().config.discount, tolerance);
}

std::string FinalStrategy(const AgentSpec& agent, const std::optional<QTable>& table) {
  if (!agent.IsLearner() || !table) return agent.IsLearner() ? "none" : agent.scripted().Name();
  const LearnerAgent& learner = agent.learner();
  if (learner.norms) return ClassifyGreedyMap(SupervisedGreedy(*learner.norms, *table)).ToString();
  return ExtractStrategy(*table).ToString();
}

void ExperimentConfig::Validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::kInvalidConfig, what); };
  if (horizon < 1) fail("horizon must be at least 1");
  if (seeds.empty()) fail("at least one seed is required");
  if (pairings.empty()) fail("at least one pairing is required");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    fail("window_fraction must be in (0, 1]");
  }
  const double p = match_options.exploring_start_prob;
  if (!(p >= 0.0 && p <= 1.0)) fail("exploring_start_prob must be in [0, 1]");
  std::set<std::string> ids;
  for (const Pairing& pr : pairings) {
    if (!ids.insert(pr.id).second) fail("duplicate pairing id '" + pr.id + "'");
    try {
      pr.agent_m.Validate();
      pr.agent_o.Validate();
    } catch (const Error& e) {
      fail("pairing '" + pr.id + "': " + e.what());
    }
  }
  bool needs_positive_sums = false;
  for (const Pairing& pr : pairings) {
    needs_positive_sums = needs_positive_sums || UsesEqualityTerm(pr.agent_m.RewardSpec()) ||
                          UsesEqualityTerm(pr.agent_o.RewardSpec());
  }
  if (needs_positive_sums) {
    for (Action a : kAllActions) {
      for (Action b : kAllActions) {
        const PayoffPair& p = game.At(a, b);
        if (!(p.own + p.opp > 0.0)) {
          fail(std::string("equality-based rewards need positive payoff sums; joint action ") +
               ActionChar(a) + ActionChar(b) + " sums to " + std::to_string(p.own + p.opp));
        }
      }
    }
  }
}

ExperimentResult RunExperiment(const ExperimentConfig& config, int workers) {
  config.Validate();
  const std::size_t n_seeds = config.seeds.size();
  const std::size_t n_cells = config.pairings.size() * n_seeds;

  ExperimentResult result;
  result.cells.resize(n_cells);

  auto run_cell = [&](std::size_t cell) {
    const std::size_t pi = cell / n_seeds;
    const Pairing& pairing = config.pairings[pi];
    CellResult& out = result.cells[cell];
    out.pairing_index = pi;
    out.pairing_id = pairing.id;
    out.seed = config.seeds[cell % n_seeds];
    out.match = RunMatch(pairing.agent_m, pairing.agent_o, config.game, config.horizon,
                         SeedKey{config.master_seed, pi, out.seed}, config.match_options);
    out.summary = Summarize(out.match.trace, config.window_fraction);
    out.strategy_m = FinalStrategy(pairing.agent_m, out.match.q_m);
    out.strategy_o = FinalStrategy(pairing.agent_o, out.match.q_o);
  };

  const auto n_threads =
      static_cast<std::size_t>(std::clamp<long long>(workers, 1, static_cast<long long>(n_cells)));
  if (n_threads <= 1) {
    for (std::size_t c = 0; c < n_cells; ++c) run_cell(c);
    return result;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (std::size_t w = 0; w < n_threads; ++w) {
    threads.emplace_back([&] {
      for (std::size_t c = next++; c < n_cells; c = next++) {
        try {
          run_cell(c);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

std::optional<std::size_t> FirstInconsistentRow(const MatchTrace& trace,
                                                const PayoffMatrix& matrix,
                                                const AgentSpec& agent_m,
                                                const AgentSpec& agent_o,
                                                double tolerance) {
  const MoralRewardSpec reward_m = agent_m.RewardSpec();
  const MoralRewardSpec reward_o = agent_o.RewardSpec();
  auto close = [tolerance](double a, double b) { return std::abs(a - b) <= tolerance; };
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const TraceRow& r = trace.rows[t];
    const PayoffPair p = Payoff(matrix, r.action_m, r.action_o);
    if (!close(p.own, r.extrinsic_m) || !close(p.opp, r.extrinsic_o)) return t;
    const GameState state_o = r.state_m.Mirror();
    const double im = EvaluateReward(
        reward_m, {r.action_m, r.state_m.PrevOpponentOrNone(), p.own, p.opp});
    const double io = EvaluateReward(
        reward_o, {r.action_o, state_o.PrevOpponentOrNone(), p.opp, p.own});
    if (!close(im, r.intrinsic_m) || !close(io, r.intrinsic_o)) return t;
  }
  return std::nullopt;
}

}  // namespace moralsim

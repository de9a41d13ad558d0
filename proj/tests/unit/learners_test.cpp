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

#include <doctest.h>

#include <cmath>

#include "moralsim/errors.hpp"
#include "moralsim/learners.hpp"
#include "support/bridge.hpp"

namespace moralsim {
namespace {

constexpr Action C = Action::kCooperate;
constexpr Action D = Action::kDefect;

TEST_CASE("q init fills all ten entries") {
  LearnerConfig config;
  const QTable zero = QInit(config);
  config.q_init = 5;
  const QTable five = QInit(config);
  int count = 0;
  for (GameState s : GameState::All()) {
    for (Action a : kAllActions) {
      CHECK(zero.Get(s, a) == 0);
      CHECK(five.Get(s, a) == 5);
      ++count;
    }
  }
  CHECK(count == QTable::kNumEntries);
  CHECK(QTable::kNumEntries == 10);
}

TEST_CASE("q update applies the Watkins rule to a single entry") {
  QTable q;
  const GameState s = GameState::After(C, C);
  q.Update(s, C, 6, s, 0.1, 0.9);
  CHECK(q.Get(s, C) == doctest::Approx(0.6).epsilon(1e-15));
  for (GameState t : GameState::All()) {
    for (Action a : kAllActions) {
      if (t == s && a == C) continue;
      CHECK(q.Get(t, a) == 0);
    }
  }

  QTable frozen(2.0);
  const QTable before = frozen;
  frozen.Update(s, D, 9, GameState::Initial(), 0.0, 0.9);
  CHECK(frozen == before);

  QTable still;
  still.Update(s, D, 0, s, 0.5, 0.9);
  CHECK(still == QTable());
}

TEST_CASE("q update bootstraps from the next state's best action") {
  QTable q;
  const GameState next = GameState::After(D, D);
  q.Set(next, C, 1.0);
  q.Set(next, D, 3.0);
  q.Update(GameState::Initial(), C, 1.0, next, 0.5, 0.5);
  // 0 + 0.5 * (1 + 0.5 * 3 - 0)
  CHECK(q.Get(GameState::Initial(), C) == 1.25);
}

TEST_CASE("property: bounded rewards keep the table within the discounted range") {
  testing::ContextGen gen(3);
  Rng rng(3);
  QTable q;
  const double gamma = 0.8, r_max = 10.0;
  for (int i = 0; i < 100000; ++i) {
    const auto s = GameState::FromIndex(static_cast<int>(rng.Below(5)));
    const auto next = GameState::FromIndex(static_cast<int>(rng.Below(5)));
    const Action a = rng.Bernoulli(0.5) ? C : D;
    q.Update(s, a, gen.Payoff(), next, 0.1, gamma);
  }
  CHECK(q.AllFinite());
  for (GameState s : GameState::All()) {
    for (Action a : kAllActions) {
      CHECK(q.Get(s, a) >= 0.0);
      CHECK(q.Get(s, a) <= r_max / (1 - gamma));
    }
  }
}

TEST_CASE("greedy selection") {
  QTable q;
  const GameState s = GameState::Initial();
  q.Set(s, C, 1.0);
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) CHECK(SelectAction(q, s, 0.0, rng) == C);
  CHECK(q.GreedyActions(s) == ActionSet::Of(C));
  CHECK(q.GreedyActions(s, ActionSet::Of(D)) == ActionSet::Of(D));
}

TEST_CASE("exploration and tie breaking are uniform") {
  QTable q;
  const GameState s = GameState::After(D, C);
  Rng rng(2);
  constexpr int kDraws = 10000;
  int explore_c = 0, tie_c = 0;
  q.Set(s, D, 5.0);
  for (int i = 0; i < kDraws; ++i) explore_c += SelectAction(q, s, 1.0, rng) == C;
  const QTable flat;
  for (int i = 0; i < kDraws; ++i) tie_c += SelectAction(flat, s, 0.0, rng) == C;
  CHECK(std::abs(explore_c / double(kDraws) - 0.5) <= 0.02);
  CHECK(std::abs(tie_c / double(kDraws) - 0.5) <= 0.02);
}

TEST_CASE("selection replays exactly under a fixed seed") {
  QTable q;
  q.Set(GameState::Initial(), C, 0.5);
  Rng a(77), b(77);
  for (int i = 0; i < 2000; ++i) {
    const auto s = GameState::FromIndex(i % 5);
    CHECK(SelectAction(q, s, 0.3, a) == SelectAction(q, s, 0.3, b));
  }
}

TEST_CASE("restricted selection stays inside the allowed set") {
  const QTable q;
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    CHECK(SelectAction(q, GameState::Initial(), 1.0, ActionSet::Of(D), rng) == D);
  }
  CHECK_THROWS_AS(SelectAction(q, GameState::Initial(), 0.5, ActionSet(), rng), Error);
}

TEST_CASE("epsilon schedules") {
  LearnerConfig c;
  CHECK(c.EpsilonAt(0, 1000) == 1.0);
  CHECK(c.EpsilonAt(400, 1000) == doctest::Approx(0.505));
  CHECK(c.EpsilonAt(800, 1000) == 0.01);
  CHECK(c.EpsilonAt(999, 1000) == 0.01);
  c.decay = EpsilonDecay::kExponential;
  CHECK(c.EpsilonAt(400, 1000) == doctest::Approx(0.1));
  CHECK(c.EpsilonAt(900, 1000) == 0.01);
  double prev = 2.0;
  for (long long t = 0; t < 1000; t += 7) {
    const double e = c.EpsilonAt(t, 1000);
    CHECK(e <= prev);
    prev = e;
  }
  CHECK(ParseEpsilonDecay(EpsilonDecayName(EpsilonDecay::kLinear)) == EpsilonDecay::kLinear);
  CHECK_FALSE(ParseEpsilonDecay("cosine").has_value());
}

TEST_CASE("learner config validation") {
  CHECK_NOTHROW(LearnerConfig{}.Validate());
  LearnerConfig c;
  c.discount = 1.0;
  CHECK_THROWS_AS(c.Validate(), Error);
  c = {};
  c.learning_rate = 0;
  CHECK_THROWS_AS(c.Validate(), Error);
  c = {};
  c.epsilon_start = 0.1;
  c.epsilon_end = 0.2;
  CHECK_THROWS_AS(c.Validate(), Error);
  c = {};
  c.q_init = std::nan("");
  CHECK_THROWS_AS(c.Validate(), Error);
}

TEST_CASE("scripted policies") {
  Rng rng(5);
  const auto tft = ScriptedPolicy::TitForTat();
  CHECK(ScriptedAction(tft, GameState::Initial(), rng) == C);
  CHECK(ScriptedAction(tft, GameState::After(D, C), rng) == D);
  CHECK(ScriptedAction(tft, GameState::After(C, D), rng) == C);
  for (GameState s : GameState::All()) {
    CHECK(ScriptedAction(ScriptedPolicy::AllD(), s, rng) == D);
    CHECK(ScriptedAction(ScriptedPolicy::AllC(), s, rng) == C);
  }
  int coop = 0;
  for (int i = 0; i < 10000; ++i) {
    coop += ScriptedAction(ScriptedPolicy::Random(0.3), GameState::Initial(), rng) == C;
  }
  CHECK(std::abs(coop / 10000.0 - 0.3) <= 0.02);
  CHECK(ScriptedPolicy::Random(0.25).Name() == "Random(0.25)");
  CHECK(tft.Name() == "TFT");
  CHECK_THROWS_AS(ScriptedPolicy::Random(1.5).Validate(), Error);
  CHECK(ParseScriptedKind("TFT") == ScriptedKind::kTitForTat);
  CHECK_FALSE(ParseScriptedKind("Pavlov").has_value());
}

TEST_CASE("value iteration matches exhaustive policy search") {
  using testing::RefKind;
  using testing::RefOpponent;
  const std::pair<const char*, testing::Table> games[] = {
      {"IPD", testing::kIpd}, {"IVD", testing::kIvd}, {"ISH", testing::kIsh}};
  const std::pair<ScriptedPolicy, RefOpponent> opponents[] = {
      {ScriptedPolicy::AllC(), RefOpponent::kAllC},
      {ScriptedPolicy::AllD(), RefOpponent::kAllD},
      {ScriptedPolicy::TitForTat(), RefOpponent::kTft}};
  const std::pair<MoralRewardSpec, RefKind> rewards[] = {
      {MoralRewardSpec::Selfish(), RefKind::kSelfish},
      {MoralRewardSpec::Utilitarian(), RefKind::kUtilitarian},
      {MoralRewardSpec::Deontological(), RefKind::kDeontological},
      {MoralRewardSpec::VirtueEquality(), RefKind::kEquality},
      {MoralRewardSpec::VirtueKindness(), RefKind::kKindness},
      {MoralRewardSpec::VirtueMixed(), RefKind::kMixed}};
  for (double gamma : {0.0, 0.5, 0.8, 0.9}) {
    for (const auto& [name, table] : games) {
      for (const auto& [policy, ref_opp] : opponents) {
        for (const auto& [spec, ref_kind] : rewards) {
          CAPTURE(gamma);
          CAPTURE(name);
          CAPTURE(policy.Name());
          CAPTURE(spec.Describe());
          const QTable q = ValueIterationOracle(MakeGame(name), policy, spec, gamma, 1e-10);
          const testing::RefQ ref = testing::BruteForceQStar(table, ref_opp, ref_kind, gamma);
          for (GameState s : GameState::All()) {
            for (Action a : kAllActions) {
              CHECK(std::abs(q.Get(s, a) - ref[s.index()][Index(a)]) <= 1e-8);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("oracle worked examples") {
  const PayoffMatrix ipd = MakeGame("IPD");
  const QTable vs_alld =
      ValueIterationOracle(ipd, ScriptedPolicy::AllD(), MoralRewardSpec::Selfish(), 0.9, 1e-10);
  for (const auto& g : Greedy(vs_alld)) CHECK(g == D);

  const QTable vs_tft = ValueIterationOracle(ipd, ScriptedPolicy::TitForTat(),
                                             MoralRewardSpec::Selfish(), 0.9, 1e-10);
  const GameState cc = GameState::After(C, C);
  CHECK(Greedy(vs_tft)[cc.index()] == C);
  CHECK(vs_tft.Get(cc, C) == doctest::Approx(30.0).epsilon(1e-8));
  CHECK(vs_tft.Get(cc, D) < vs_tft.Get(cc, C));

  const QTable myopic = ValueIterationOracle(ipd, ScriptedPolicy::TitForTat(),
                                             MoralRewardSpec::Utilitarian(), 0.0, 1e-12);
  CHECK(myopic.Get(GameState::Initial(), C) == 6);
  CHECK(myopic.Get(GameState::Initial(), D) == 5);
  CHECK(myopic.Get(GameState::After(D, D), D) == 4);
}

TEST_CASE("oracle accepts stochastic opponents and rejects a discount of one") {
  const QTable q = ValueIterationOracle(MakeGame("IPD"), ScriptedPolicy::Random(0.5),
                                        MoralRewardSpec::Selfish(), 0.8, 1e-10);
  for (const auto& g : Greedy(q)) CHECK(g == D);
  try {
    ValueIterationOracle(MakeGame("IPD"), ScriptedPolicy::AllC(), MoralRewardSpec::Selfish(),
                         1.0, 1e-8);
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidInput);
  }
}

TEST_CASE("property: greedy policy is invariant under positive reward scaling") {
  for (double k : {0.5, 2.0, 7.0}) {
    for (auto opp : {ScriptedPolicy::AllC(), ScriptedPolicy::AllD(), ScriptedPolicy::TitForTat()}) {
      const QTable base =
          ValueIterationOracle(MakeGame("IVD"), opp, MoralRewardSpec::Selfish(), 0.8, 1e-12);
      const QTable scaled = ValueIterationOracle(
          MakeGame("IVD"), opp, MoralRewardSpec::Altruistic(k, 0), 0.8, 1e-12);
      CHECK(Greedy(base, 1e-9) == Greedy(scaled, 1e-9));
    }
  }
}

TEST_CASE("greedy map marks ties") {
  QTable q;
  q.Set(GameState::Initial(), C, 1.0);
  q.Set(GameState::After(C, C), D, 1e-12);
  const GreedyMap strict = Greedy(q);
  CHECK(strict[0] == C);
  CHECK(strict[GameState::After(C, C).index()] == D);
  CHECK_FALSE(strict[GameState::After(D, D).index()].has_value());
  CHECK_FALSE(Greedy(q, 1e-9)[GameState::After(C, C).index()].has_value());
}

}  // namespace
}  // namespace moralsim

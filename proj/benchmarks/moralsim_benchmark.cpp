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

#include <benchmark/benchmark.h>

#include <sstream>

#include "moralsim/learners.hpp"
#include "moralsim/report.hpp"
#include "moralsim/rewards.hpp"
#include "moralsim/simulation.hpp"

namespace moralsim {
namespace {

void BM_EvaluateReward(benchmark::State& state) {
  const MoralRewardSpec spec = MoralRewardSpec::Composite(
      {{MoralRewardSpec::VirtueEquality(), 0.5}, {MoralRewardSpec::VirtueKindness(1), 0.5}});
  RewardContext ctx{Action::kDefect, Action::kCooperate, 4, 1};
  for (auto _ : state) {
    ctx.own_payoff = ctx.own_payoff == 4 ? 3 : 4;
    benchmark::DoNotOptimize(EvaluateReward(spec, ctx));
  }
}
BENCHMARK(BM_EvaluateReward);

void BM_SelectAndUpdate(benchmark::State& state) {
  QTable q;
  Rng rng(1);
  GameState s = GameState::Initial();
  for (auto _ : state) {
    const Action a = SelectAction(q, s, 0.1, rng);
    const GameState next = GameState::After(Action::kCooperate, a);
    q.Update(s, a, 3.0, next, 0.1, 0.8);
    s = next;
  }
  benchmark::DoNotOptimize(q);
}
BENCHMARK(BM_SelectAndUpdate);

void BM_RunMatch(benchmark::State& state) {
  const AgentSpec m = AgentSpec::Learner("m", MoralRewardSpec::Utilitarian());
  const AgentSpec o = AgentSpec::Learner("o", MoralRewardSpec::Selfish());
  const PayoffMatrix game = MakeGame("IPD");
  const int horizon = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunMatch(m, o, game, horizon, seed++));
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_RunMatch)->Arg(1000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_ValueIterationOracle(benchmark::State& state) {
  const PayoffMatrix game = MakeGame("ISH");
  for (auto _ : state) {
    benchmark::DoNotOptimize(ValueIterationOracle(game, ScriptedPolicy::TitForTat(),
                                                  MoralRewardSpec::VirtueMixed(), 0.8, 1e-10));
  }
}
BENCHMARK(BM_ValueIterationOracle);

void BM_RunExperiment(benchmark::State& state) {
  ExperimentConfig config;
  config.horizon = 50000;
  config.seeds = {0, 1, 2, 3};
  const AgentSpec a = AgentSpec::Learner("a", MoralRewardSpec::Deontological());
  config.pairings = {{"a_vs_a", a, a}};
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(RunExperiment(config, workers));
}
BENCHMARK(BM_RunExperiment)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_WriteTraces(benchmark::State& state) {
  ExperimentConfig config;
  config.horizon = 50000;
  const AgentSpec a = AgentSpec::Learner("a", MoralRewardSpec::Selfish());
  config.pairings = {{"a_vs_a", a, a}};
  const ExperimentResult result = RunExperiment(config);
  for (auto _ : state) {
    std::ostringstream out;
    WriteTracesCsv(out, result);
    benchmark::DoNotOptimize(out.str().size());
  }
  state.SetItemsProcessed(state.iterations() * config.horizon);
}
BENCHMARK(BM_WriteTraces)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace moralsim

BENCHMARK_MAIN();

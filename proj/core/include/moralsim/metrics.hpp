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

#ifndef MORALSIM_METRICS_HPP_
#define MORALSIM_METRICS_HPP_

// Cumulative social outcomes, cooperation rates and strategy labels.

#include <cstddef>
#include <optional>
#include <string>

#include "moralsim/learners.hpp"
#include "moralsim/trace.hpp"

namespace moralsim {

// Sum over steps of both extrinsic payoffs.
double CollectiveReturn(const MatchTrace& trace);
// Sum over steps of 1 - |r_M - r_O| / (r_M + r_O). Throws DegenerateInput on
// a row whose payoff sum is not positive.
double GiniReturn(const MatchTrace& trace);
// Sum over steps of the smaller payoff.
double MinReturn(const MatchTrace& trace);

// Half-open step range [begin, end).
struct StepRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end > begin ? end - begin : 0; }
};

// The last ceil(fraction * length) steps, at least one step when length > 0.
StepRange FinalWindow(std::size_t length, double fraction);
inline StepRange FullWindow(std::size_t length) { return {0, length}; }

// Fraction of cooperative moves by `player` inside `window`. Throws
// InvalidInput for an empty window or one that extends past the trace.
double CooperationRate(const MatchTrace& trace, Player player, StepRange window);

enum class StrategyKind { kAllC, kAllD, kTitForTat, kAntiTitForTat, kGrimLike, kOther };

struct StrategyLabel {
  StrategyKind kind = StrategyKind::kOther;
  GreedyMap greedy;  // always carried, so no information is lost

  // "AllC", ..., or "Other[init:C CC:D ...]" with '?' marking ties.
  std::string ToString() const;
};

StrategyLabel ClassifyGreedyMap(const GreedyMap& greedy);
StrategyLabel ExtractStrategy(const QTable& table);

inline constexpr double kDefaultWindowFraction = 0.1;

struct OutcomeSummary {
  double collective = 0.0;
  double gini = 0.0;
  double min = 0.0;
  double cooperation_m = 0.0;
  double cooperation_o = 0.0;
  double final_cooperation_m = 0.0;
  double final_cooperation_o = 0.0;
  long long deadlocks = 0;

  double final_window_cooperation() const {
    return 0.5 * (final_cooperation_m + final_cooperation_o);
  }
};

// Throws InvalidInput on an empty trace.
OutcomeSummary Summarize(const MatchTrace& trace,
                         double window_fraction = kDefaultWindowFraction);

}  // namespace moralsim

#endif  // MORALSIM_METRICS_HPP_

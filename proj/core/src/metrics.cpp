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

#include "moralsim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "moralsim/errors.hpp"
#include "moralsim/rewards.hpp"

namespace moralsim {

namespace {

constexpr Action C = Action::kCooperate;
constexpr Action D = Action::kDefect;

bool Matches(const GreedyMap& greedy, auto&& rule) {
  for (GameState s : GameState::All()) {
    if (greedy[s.index()] != rule(s)) return false;
  }
  return true;
}

}  // namespace

double CollectiveReturn(const MatchTrace& trace) {
  double total = 0.0;
  for (const TraceRow& r : trace.rows) total += r.extrinsic_m + r.extrinsic_o;
  return total;
}

double GiniReturn(const MatchTrace& trace) {
  double total = 0.0;
  for (const TraceRow& r : trace.rows) total += EqualityTerm(r.extrinsic_m, r.extrinsic_o);
  return total;
}

double MinReturn(const MatchTrace& trace) {
  double total = 0.0;
  for (const TraceRow& r : trace.rows) total += std::min(r.extrinsic_m, r.extrinsic_o);
  return total;
}

StepRange FinalWindow(std::size_t length, double fraction) {
  if (length == 0) return {0, 0};
  const double clamped = std::clamp(fraction, 0.0, 1.0);
  auto width = static_cast<std::size_t>(std::ceil(clamped * static_cast<double>(length)));
  width = std::clamp<std::size_t>(width, 1, length);
  return {length - width, length};
}

double CooperationRate(const MatchTrace& trace, Player player, StepRange window) {
  if (window.size() == 0) {
    throw Error(ErrorKind::kInvalidInput, "cooperation window is empty");
  }
  if (window.end > trace.size()) {
    throw Error(ErrorKind::kInvalidInput, "cooperation window extends past the trace");
  }
  std::size_t cooperations = 0;
  for (std::size_t t = window.begin; t < window.end; ++t) {
    const TraceRow& r = trace.rows[t];
    const Action a = player == Player::kM ? r.action_m : r.action_o;
    if (a == C) ++cooperations;
  }
  return static_cast<double>(cooperations) / static_cast<double>(window.size());
}

std::string StrategyLabel::ToString() const {
  switch (kind) {
    case StrategyKind::kAllC:
      return "AllC";
    case StrategyKind::kAllD:
      return "AllD";
    case StrategyKind::kTitForTat:
      return "TFT";
    case StrategyKind::kAntiTitForTat:
      return "AntiTFT";
    case StrategyKind::kGrimLike:
      return "GrimLike";
    case StrategyKind::kOther:
      break;
  }
  std::string out = "Other[";
  for (GameState s : GameState::All()) {
    if (!s.IsInitial()) out += ' ';
    const auto& a = greedy[s.index()];
    out += s.ToString() + ":" + (a ? ActionChar(*a) : '?');
  }
  return out + "]";
}

StrategyLabel ClassifyGreedyMap(const GreedyMap& greedy) {
  StrategyLabel label{StrategyKind::kOther, greedy};
  if (Matches(greedy, [](GameState) { return std::optional(C); })) {
    label.kind = StrategyKind::kAllC;
  } else if (Matches(greedy, [](GameState) { return std::optional(D); })) {
    label.kind = StrategyKind::kAllD;
  } else if (Matches(greedy, [](GameState s) {
               return std::optional(s.IsInitial() ? C : s.prev_opponent());
             })) {
    label.kind = StrategyKind::kTitForTat;
  } else if (Matches(greedy, [](GameState s) {
               if (s.IsInitial()) return std::optional(D);
               return std::optional(s.prev_opponent() == C ? D : C);
             })) {
    label.kind = StrategyKind::kAntiTitForTat;
  } else if (Matches(greedy, [](GameState s) {
               const bool cooperate = s.IsInitial() || s == GameState::After(C, C);
               return std::optional(cooperate ? C : D);
             })) {
    label.kind = StrategyKind::kGrimLike;
  }
  return label;
}

StrategyLabel ExtractStrategy(const QTable& table) {
  return ClassifyGreedyMap(Greedy(table));
}

OutcomeSummary Summarize(const MatchTrace& trace, double window_fraction) {
  if (trace.empty()) throw Error(ErrorKind::kInvalidInput, "cannot summarize an empty trace");
  OutcomeSummary out;
  out.collective = CollectiveReturn(trace);
  out.gini = GiniReturn(trace);
  out.min = MinReturn(trace);
  const StepRange full = FullWindow(trace.size());
  const StepRange final_window = FinalWindow(trace.size(), window_fraction);
  out.cooperation_m = CooperationRate(trace, Player::kM, full);
  out.cooperation_o = CooperationRate(trace, Player::kO, full);
  out.final_cooperation_m = CooperationRate(trace, Player::kM, final_window);
  out.final_cooperation_o = CooperationRate(trace, Player::kO, final_window);
  for (const TraceRow& r : trace.rows) {
    out.deadlocks += static_cast<long long>(r.deadlock_m) + static_cast<long long>(r.deadlock_o);
  }
  return out;
}

}  // namespace moralsim

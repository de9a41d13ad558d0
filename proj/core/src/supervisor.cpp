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

#include "moralsim/supervisor.hpp"

#include <algorithm>
#include <set>

#include "moralsim/errors.hpp"

namespace moralsim {

std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kLegal:
      return "legal";
    case Verdict::kPermissible:
      return "permissible";
    case Verdict::kForbidden:
      return "forbidden";
  }
  return "?";
}

std::optional<Verdict> ParseVerdict(std::string_view name) {
  if (name == "legal") return Verdict::kLegal;
  if (name == "permissible") return Verdict::kPermissible;
  if (name == "forbidden") return Verdict::kForbidden;
  return std::nullopt;
}

StateCondition StateCondition::Of(std::initializer_list<GameState> states) {
  StateCondition c;
  for (GameState s : states) c.Add(s);
  return c;
}

StateCondition StateCondition::AnyState() {
  StateCondition c;
  for (GameState s : GameState::All()) c.Add(s);
  return c;
}

StateCondition StateCondition::PrevOpponentIs(Action a) {
  return Of({GameState::After(a, Action::kCooperate),
             GameState::After(a, Action::kDefect)});
}

std::vector<GameState> StateCondition::States() const {
  std::vector<GameState> out;
  for (GameState s : GameState::All()) {
    if (Holds(s)) out.push_back(s);
  }
  return out;
}

Norm Norm::ConditionalCooperation() {
  return {"conditional_cooperation", StateCondition::PrevOpponentIs(Action::kCooperate),
          {Verdict::kLegal, Verdict::kForbidden}};
}

Verdict EvaluateNorm(const Norm& norm, GameState s, Action a) {
  if (!norm.condition.Holds(s)) return Verdict::kLegal;
  return norm.verdicts[Index(a)];
}

NormBook::NormBook(std::vector<Norm> norms) : norms_(std::move(norms)) {
  std::set<std::string> seen;
  for (const Norm& n : norms_) {
    if (!seen.insert(n.id).second) {
      throw Error(ErrorKind::kInvalidInput, "duplicate norm id '" + n.id + "'");
    }
  }
}

Verdict NormBook::Combined(GameState s, Action a) const {
  Verdict worst = Verdict::kLegal;
  for (const Norm& n : norms_) worst = std::max(worst, EvaluateNorm(n, s, a));
  return worst;
}

FilterResult FilterActions(const NormBook& book, GameState s, ActionSet proposed) {
  if (proposed.Empty()) {
    throw Error(ErrorKind::kInvalidInput, "proposed action set is empty");
  }
  ActionSet legal, permissible;
  for (Action a : proposed.ToVector()) {
    const Verdict v = book.Combined(s, a);
    if (v == Verdict::kLegal) legal.Insert(a);
    if (v != Verdict::kForbidden) permissible.Insert(a);
  }
  if (!legal.Empty()) return {legal, false};
  if (!permissible.Empty()) return {permissible, false};
  return {proposed, true};
}

SupervisedChoice SupervisedSelect(const NormBook& book, const QTable& table,
                                  GameState s, double epsilon, Rng& rng) {
  const FilterResult filtered = FilterActions(book, s, ActionSet::All());
  return {SelectAction(table, s, epsilon, filtered.actions, rng), filtered.deadlock};
}

GreedyMap SupervisedGreedy(const NormBook& book, const QTable& table) {
  GreedyMap out;
  for (GameState s : GameState::All()) {
    const ActionSet best =
        table.GreedyActions(s, FilterActions(book, s, ActionSet::All()).actions);
    if (best.Size() == 1) out[s.index()] = best.ToVector().front();
  }
  return out;
}

}  // namespace moralsim

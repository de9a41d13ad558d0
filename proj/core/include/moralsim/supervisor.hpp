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

#ifndef MORALSIM_SUPERVISOR_HPP_
#define MORALSIM_SUPERVISOR_HPP_

// Normative action filter. Norms mark actions Legal, Permissible or
// Forbidden in the states where they apply; the filter keeps the actions
// every norm marks Legal, falls back to those at worst Permissible, and
// otherwise passes the proposal through flagged as a deadlock.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moralsim/games.hpp"
#include "moralsim/learners.hpp"
#include "moralsim/random.hpp"

namespace moralsim {

// Ordered from best to worst so that "at worst Permissible" is a comparison.
enum class Verdict { kLegal = 0, kPermissible = 1, kForbidden = 2 };

std::string_view VerdictName(Verdict v);
std::optional<Verdict> ParseVerdict(std::string_view name);

// Set of GameStates in which a norm applies.
class StateCondition {
 public:
  constexpr StateCondition() = default;
  static StateCondition Of(std::initializer_list<GameState> states);
  static StateCondition AnyState();
  // States where the opponent's previous action was `a`.
  static StateCondition PrevOpponentIs(Action a);

  bool Holds(GameState s) const { return (bits_ >> s.index()) & 1u; }
  void Add(GameState s) { bits_ |= static_cast<std::uint8_t>(1u << s.index()); }
  std::vector<GameState> States() const;

  friend bool operator==(StateCondition, StateCondition) = default;

 private:
  std::uint8_t bits_ = 0;
};

struct Norm {
  std::string id;
  StateCondition condition;
  std::array<Verdict, 2> verdicts{Verdict::kLegal, Verdict::kLegal};  // by Action

  // Cooperate with an opponent who just cooperated: D is Forbidden in every
  // state whose previous opponent action was C.
  static Norm ConditionalCooperation();

  friend bool operator==(const Norm&, const Norm&) = default;
};

Verdict EvaluateNorm(const Norm& norm, GameState s, Action a);

// Immutable ordered set of norms with unique ids.
class NormBook {
 public:
  NormBook() = default;
  // Throws InvalidInput on duplicate ids.
  explicit NormBook(std::vector<Norm> norms);

  const std::vector<Norm>& norms() const { return norms_; }
  bool empty() const { return norms_.empty(); }

  // Worst verdict any norm assigns to (s, a).
  Verdict Combined(GameState s, Action a) const;

  friend bool operator==(const NormBook&, const NormBook&) = default;

 private:
  std::vector<Norm> norms_;
};

struct FilterResult {
  ActionSet actions;
  bool deadlock = false;
};

// Throws InvalidInput when `proposed` is empty.
FilterResult FilterActions(const NormBook& book, GameState s, ActionSet proposed);

struct SupervisedChoice {
  Action action = Action::kCooperate;
  bool deadlock = false;
};

// Epsilon-greedy selection restricted to the filtered action set.
SupervisedChoice SupervisedSelect(const NormBook& book, const QTable& table,
                                  GameState s, double epsilon, Rng& rng);

// Greedy deployment policy under the filter; empty where the filtered greedy
// choice is a tie.
GreedyMap SupervisedGreedy(const NormBook& book, const QTable& table);

}  // namespace moralsim

#endif  // MORALSIM_SUPERVISOR_HPP_

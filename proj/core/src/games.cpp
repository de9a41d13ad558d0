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

#include "moralsim/games.hpp"

#include <cctype>
#include <cmath>
#include <utility>

#include "moralsim/errors.hpp"

namespace moralsim {

namespace {

constexpr Action C = Action::kCooperate;
constexpr Action D = Action::kDefect;

// Rows are the row player's action, columns the column player's.
PayoffMatrix Preset(std::string name, PayoffPair cc, PayoffPair cd,
                    PayoffPair dc, PayoffPair dd) {
  return PayoffMatrix(std::move(name), {{{cc, cd}, {dc, dd}}});
}

}  // namespace

char ActionChar(Action a) { return a == C ? 'C' : 'D'; }

std::optional<Action> ParseAction(std::string_view text) {
  if (text.size() != 1) return std::nullopt;
  switch (std::toupper(static_cast<unsigned char>(text[0]))) {
    case 'C':
      return C;
    case 'D':
      return D;
    default:
      return std::nullopt;
  }
}

std::vector<Action> ActionSet::ToVector() const {
  std::vector<Action> out;
  for (Action a : kAllActions) {
    if (Contains(a)) out.push_back(a);
  }
  return out;
}

std::string ActionSet::ToString() const {
  std::string out = "{";
  for (Action a : ToVector()) {
    if (out.size() > 1) out += ',';
    out += ActionChar(a);
  }
  return out + "}";
}

PayoffMatrix::PayoffMatrix(std::string name, const Entries& entries)
    : name_(std::move(name)), entries_(entries) {
  for (const auto& row : entries_) {
    for (const auto& p : row) {
      if (!std::isfinite(p.own) || !std::isfinite(p.opp)) {
        throw Error(ErrorKind::kInvalidInput,
                    "payoff matrix '" + name_ + "' has a non-finite payoff");
      }
    }
  }
}

bool PayoffMatrix::IsSymmetric() const {
  for (Action a : kAllActions) {
    for (Action b : kAllActions) {
      if (At(a, b).own != At(b, a).opp) return false;
    }
  }
  return true;
}

bool PayoffMatrix::AllPositive() const {
  for (const auto& row : entries_) {
    for (const auto& p : row) {
      if (!(p.own > 0.0) || !(p.opp > 0.0)) return false;
    }
  }
  return true;
}

DilemmaTraits ClassifyDilemma(const PayoffMatrix& m) {
  const double reward = m.At(C, C).own;
  const double sucker = m.At(C, D).own;
  const double temptation = m.At(D, C).own;
  const double punishment = m.At(D, D).own;
  DilemmaTraits traits;
  traits.greed = temptation > reward;
  traits.fear = punishment > sucker;
  traits.asymmetric = !m.IsSymmetric();
  return traits;
}

GameRegistry::GameRegistry() {
  Register(Preset("IPD", {3, 3}, {1, 4}, {4, 1}, {2, 2}));
  Register(Preset("IVD", {4, 4}, {2, 5}, {5, 2}, {1, 1}));
  Register(Preset("ISH", {5, 5}, {1, 4}, {4, 1}, {2, 2}));
}

const PayoffMatrix& GameRegistry::Get(std::string_view name) const {
  auto it = games_.find(name);
  if (it == games_.end()) {
    std::string known;
    for (const auto& [k, v] : games_) known += (known.empty() ? "" : ", ") + k;
    throw Error(ErrorKind::kNotFound,
                "unknown game '" + std::string(name) + "' (known: " + known + ")");
  }
  return it->second;
}

bool GameRegistry::Contains(std::string_view name) const {
  return games_.find(name) != games_.end();
}

void GameRegistry::Register(PayoffMatrix matrix) {
  if (Contains(matrix.name())) {
    throw Error(ErrorKind::kInvalidInput,
                "game '" + matrix.name() + "' is already registered");
  }
  std::string key = matrix.name();
  games_.emplace(std::move(key), std::move(matrix));
}

std::vector<std::string> GameRegistry::Names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : games_) out.push_back(k);
  return out;
}

PayoffMatrix MakeGame(std::string_view name) {
  static const GameRegistry presets;
  return presets.Get(name);
}

GameState GameState::FromIndex(int index) {
  if (index < 0 || index >= kNumStates) {
    throw Error(ErrorKind::kInvalidInput,
                "state index " + std::to_string(index) + " out of range");
  }
  return GameState(static_cast<std::uint8_t>(index));
}

std::optional<GameState> GameState::Parse(std::string_view text) {
  if (text == "init" || text == "initial") return Initial();
  if (text.size() != 2) return std::nullopt;
  auto opp = ParseAction(text.substr(0, 1));
  auto own = ParseAction(text.substr(1, 1));
  if (!opp || !own) return std::nullopt;
  return After(*opp, *own);
}

std::array<GameState, GameState::kNumStates> GameState::All() {
  return {Initial(), After(C, C), After(C, D), After(D, C), After(D, D)};
}

std::string GameState::ToString() const {
  if (IsInitial()) return "init";
  return {ActionChar(prev_opponent()), ActionChar(prev_own())};
}

IteratedGameEnv::IteratedGameEnv(PayoffMatrix matrix, int horizon)
    : matrix_(std::move(matrix)), horizon_(horizon) {
  if (horizon_ < 1) {
    throw Error(ErrorKind::kInvalidInput, "horizon must be at least 1");
  }
}

GameState IteratedGameEnv::Reset() { return ResetTo(GameState::Initial()); }

GameState IteratedGameEnv::ResetTo(GameState start) {
  current_step_ = 0;
  state_m_ = start;
  state_o_ = start.Mirror();
  return state_m_;
}

StepResult IteratedGameEnv::Step(Action action_m, Action action_o) {
  if (done()) {
    throw Error(ErrorKind::kEpisodeDone,
                "match already played all " + std::to_string(horizon_) + " steps");
  }
  const PayoffPair p = Payoff(matrix_, action_m, action_o);
  state_m_ = GameState::After(action_o, action_m);
  state_o_ = GameState::After(action_m, action_o);
  ++current_step_;
  return {state_m_, state_o_, p.own, p.opp};
}

}  // namespace moralsim

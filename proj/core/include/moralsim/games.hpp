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

#ifndef MORALSIM_GAMES_HPP_
#define MORALSIM_GAMES_HPP_

// Two-player, two-action matrix games and the iterated-game environment.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moralsim {

enum class Action : std::uint8_t { kCooperate = 0, kDefect = 1 };

inline constexpr std::array<Action, 2> kAllActions = {Action::kCooperate,
                                                      Action::kDefect};

inline constexpr int Index(Action a) { return static_cast<int>(a); }
char ActionChar(Action a);
// Accepts 'C' or 'D' (case-insensitive).
std::optional<Action> ParseAction(std::string_view text);

// Subset of {C, D} as a two-bit mask.
class ActionSet {
 public:
  constexpr ActionSet() = default;
  static constexpr ActionSet All() { return ActionSet(0b11); }
  static constexpr ActionSet Of(Action a) {
    return ActionSet(static_cast<std::uint8_t>(1u << Index(a)));
  }

  constexpr bool Contains(Action a) const { return (bits_ >> Index(a)) & 1u; }
  constexpr bool Empty() const { return bits_ == 0; }
  constexpr int Size() const { return (bits_ & 1u) + ((bits_ >> 1) & 1u); }
  constexpr void Insert(Action a) { bits_ |= static_cast<std::uint8_t>(1u << Index(a)); }
  constexpr bool IsSubsetOf(ActionSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr std::uint8_t bits() const { return bits_; }
  std::vector<Action> ToVector() const;
  std::string ToString() const;

  friend constexpr bool operator==(ActionSet, ActionSet) = default;

 private:
  constexpr explicit ActionSet(std::uint8_t bits) : bits_(bits) {}
  std::uint8_t bits_ = 0;
};

struct PayoffPair {
  double own = 0.0;
  double opp = 0.0;
  friend bool operator==(const PayoffPair&, const PayoffPair&) = default;
};

// Bimatrix indexed by (row action, column action). Entry (a, b) holds
// (row payoff, column payoff).
class PayoffMatrix {
 public:
  using Entries = std::array<std::array<PayoffPair, 2>, 2>;

  // Throws InvalidInput if any payoff is non-finite.
  PayoffMatrix(std::string name, const Entries& entries);

  const std::string& name() const { return name_; }
  const PayoffPair& At(Action row, Action col) const {
    return entries_[Index(row)][Index(col)];
  }
  const Entries& entries() const { return entries_; }

  // True when the column player's payoffs are the transpose of the row
  // player's, i.e. the game looks the same from both seats.
  bool IsSymmetric() const;
  bool AllPositive() const;

  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;

 private:
  std::string name_;
  Entries entries_;
};

// Payoffs for a player choosing `own` against an opponent choosing `opp`, from
// that player's perspective.
inline PayoffPair Payoff(const PayoffMatrix& m, Action own, Action opp) {
  return m.At(own, opp);
}

struct DilemmaTraits {
  bool greed = false;  // T > R
  bool fear = false;   // P > S
  // Set when the matrix is not symmetric; traits then describe the row player.
  bool asymmetric = false;

  bool IsDilemma() const { return greed || fear; }
  friend bool operator==(const DilemmaTraits&, const DilemmaTraits&) = default;
};

DilemmaTraits ClassifyDilemma(const PayoffMatrix& m);

// Name-indexed collection of matrices. Starts with the IPD, IVD and ISH
// presets; custom matrices may be added under new names.
class GameRegistry {
 public:
  GameRegistry();

  // Throws NotFound.
  const PayoffMatrix& Get(std::string_view name) const;
  bool Contains(std::string_view name) const;
  // Throws InvalidInput if the name is already taken.
  void Register(PayoffMatrix matrix);
  std::vector<std::string> Names() const;

 private:
  std::map<std::string, PayoffMatrix, std::less<>> games_;
};

// Preset lookup: "IPD", "IVD" or "ISH". Throws NotFound otherwise.
PayoffMatrix MakeGame(std::string_view name);

// What a player observes: Initial at the start of a match, otherwise the
// previous joint action as (opponent's action, own action).
class GameState {
 public:
  static constexpr int kNumStates = 5;

  constexpr GameState() = default;
  static constexpr GameState Initial() { return GameState(0); }
  static constexpr GameState After(Action prev_opponent, Action prev_own) {
    return GameState(
        static_cast<std::uint8_t>(1 + 2 * Index(prev_opponent) + Index(prev_own)));
  }
  // Throws InvalidInput for indices outside [0, kNumStates).
  static GameState FromIndex(int index);
  // "init", or two letters: previous opponent action then previous own action.
  static std::optional<GameState> Parse(std::string_view text);
  static std::array<GameState, kNumStates> All();

  constexpr bool IsInitial() const { return index_ == 0; }
  constexpr int index() const { return index_; }
  // Only meaningful when !IsInitial().
  constexpr Action prev_opponent() const {
    return static_cast<Action>((index_ - 1) / 2);
  }
  constexpr Action prev_own() const { return static_cast<Action>((index_ - 1) % 2); }
  std::optional<Action> PrevOpponentOrNone() const {
    if (IsInitial()) return std::nullopt;
    return prev_opponent();
  }

  // The same joint action seen from the other seat.
  constexpr GameState Mirror() const {
    return IsInitial() ? *this : After(prev_own(), prev_opponent());
  }

  std::string ToString() const;

  friend constexpr bool operator==(GameState, GameState) = default;

 private:
  constexpr explicit GameState(std::uint8_t index) : index_(index) {}
  std::uint8_t index_ = 0;
};

struct StepResult {
  GameState next_state_m;
  GameState next_state_o;
  double reward_m = 0.0;
  double reward_o = 0.0;
};

// Fixed-horizon iterated play of one matrix game between M and O. The
// environment applies no discounting.
class IteratedGameEnv {
 public:
  // Throws InvalidInput when horizon < 1.
  IteratedGameEnv(PayoffMatrix matrix, int horizon);

  // Starts a new episode at Initial.
  GameState Reset();
  // Starts a new episode with M observing `start` (O observes its mirror).
  // Used for exploring starts; the episode still counts from step 0.
  GameState ResetTo(GameState start);

  // Simultaneous move. Throws EpisodeDone once `horizon` steps were played.
  StepResult Step(Action action_m, Action action_o);

  const PayoffMatrix& matrix() const { return matrix_; }
  int horizon() const { return horizon_; }
  int current_step() const { return current_step_; }
  bool done() const { return current_step_ >= horizon_; }
  GameState state_m() const { return state_m_; }
  GameState state_o() const { return state_o_; }

 private:
  PayoffMatrix matrix_;
  int horizon_;
  int current_step_ = 0;
  GameState state_m_ = GameState::Initial();
  GameState state_o_ = GameState::Initial();
};

}  // namespace moralsim

#endif  // MORALSIM_GAMES_HPP_

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

#ifndef MORALSIM_REWARDS_HPP_
#define MORALSIM_REWARDS_HPP_

// Intrinsic moral rewards. Every function here is pure: the result depends
// only on the arguments.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "moralsim/games.hpp"

namespace moralsim {

// One step as seen by the player whose reward is computed.
struct RewardContext {
  Action own_action = Action::kCooperate;
  // Opponent's action on the previous step; empty at the start of a match.
  std::optional<Action> prev_opponent_action;
  double own_payoff = 0.0;
  double opp_payoff = 0.0;
};

enum class RewardKind {
  kSelfish,
  kUtilitarian,
  kDeontological,
  kVirtueEquality,
  kVirtueKindness,
  kVirtueMixed,
  kAltruistic,
  kInequityAverse,
  kRawlsianMin,
  kComposite,
};

std::string_view RewardKindName(RewardKind kind);
std::optional<RewardKind> ParseRewardKind(std::string_view name);
// Comma-separated list of every accepted kind name.
std::string RewardKindNames();

inline constexpr double kDefaultXi = 5.0;
inline constexpr double kDefaultXiHat = 1.0;
inline constexpr double kDefaultBeta = 0.5;

// Parameters for all kinds; each kind reads only the fields it needs.
struct RewardParams {
  double xi = kDefaultXi;           // Deontological penalty, kindness bonus
  double beta = kDefaultBeta;       // VirtueMixed weight on equality
  double xi_hat = kDefaultXiHat;    // VirtueMixed kindness scale
  double weight_self = 1.0;         // Altruistic
  double weight_other = 1.0;        // Altruistic
  double disadvantageous = 0.0;     // InequityAverse, weight on being behind
  double advantageous = 0.0;        // InequityAverse, weight on being ahead

  friend bool operator==(const RewardParams&, const RewardParams&) = default;
};

class MoralRewardSpec {
 public:
  struct Term;

  MoralRewardSpec() = default;
  MoralRewardSpec(RewardKind kind, RewardParams params)
      : kind_(kind), params_(params) {}

  static MoralRewardSpec Selfish() { return {RewardKind::kSelfish, {}}; }
  static MoralRewardSpec Utilitarian() { return {RewardKind::kUtilitarian, {}}; }
  static MoralRewardSpec Deontological(double xi = kDefaultXi);
  static MoralRewardSpec VirtueEquality() { return {RewardKind::kVirtueEquality, {}}; }
  static MoralRewardSpec VirtueKindness(double xi = kDefaultXi);
  static MoralRewardSpec VirtueMixed(double beta = kDefaultBeta,
                                     double xi_hat = kDefaultXiHat);
  static MoralRewardSpec Altruistic(double weight_self, double weight_other);
  static MoralRewardSpec InequityAverse(double disadvantageous, double advantageous);
  static MoralRewardSpec RawlsianMin() { return {RewardKind::kRawlsianMin, {}}; }
  static MoralRewardSpec Composite(std::vector<Term> terms);

  RewardKind kind() const { return kind_; }
  const RewardParams& params() const { return params_; }
  const std::vector<Term>& terms() const { return terms_; }

  // Throws InvalidSpec with a description of the first violated range.
  void Validate() const;
  // Short label such as "deontological(xi=5)".
  std::string Describe() const;

  friend bool operator==(const MoralRewardSpec&, const MoralRewardSpec&);

 private:
  RewardKind kind_ = RewardKind::kSelfish;
  RewardParams params_;
  std::vector<Term> terms_;  // Composite only
};

struct MoralRewardSpec::Term {
  MoralRewardSpec spec;
  double weight = 1.0;
  friend bool operator==(const Term&, const Term&) = default;
};

// 1 - |a - b| / (a + b). Throws DegenerateInput when a + b <= 0.
double EqualityTerm(double own_payoff, double opp_payoff);

double SelfishReward(const RewardContext& ctx);
double UtilitarianReward(const RewardContext& ctx);
// -xi for defecting after the opponent cooperated, 0 otherwise (including the
// first step, where there is no previous opponent action).
double DeontologicalReward(const RewardContext& ctx, double xi);
double VirtueEqualityReward(const RewardContext& ctx);
double VirtueKindnessReward(const RewardContext& ctx, double xi);
double VirtueMixedReward(const RewardContext& ctx, double beta, double xi_hat);
double AltruisticReward(const RewardContext& ctx, double weight_self,
                        double weight_other);
// Two-player Fehr-Schmidt utility.
double InequityAverseReward(const RewardContext& ctx, double disadvantageous,
                            double advantageous);
double RawlsianMinReward(const RewardContext& ctx);
// Weighted sum of leaf rewards. Throws InvalidSpec on an empty list or a
// nested Composite.
double CompositeReward(const RewardContext& ctx,
                       std::span<const MoralRewardSpec::Term> terms);

double EvaluateReward(const MoralRewardSpec& spec, const RewardContext& ctx);

}  // namespace moralsim

#endif  // MORALSIM_REWARDS_HPP_

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

#include "moralsim/rewards.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "moralsim/errors.hpp"

namespace moralsim {

namespace {

struct KindEntry {
  RewardKind kind;
  std::string_view name;
};

constexpr std::array<KindEntry, 10> kKinds = {{
    {RewardKind::kSelfish, "selfish"},
    {RewardKind::kUtilitarian, "utilitarian"},
    {RewardKind::kDeontological, "deontological"},
    {RewardKind::kVirtueEquality, "virtue_equality"},
    {RewardKind::kVirtueKindness, "virtue_kindness"},
    {RewardKind::kVirtueMixed, "virtue_mixed"},
    {RewardKind::kAltruistic, "altruistic"},
    {RewardKind::kInequityAverse, "inequity_averse"},
    {RewardKind::kRawlsianMin, "rawlsian_min"},
    {RewardKind::kComposite, "composite"},
}};

[[noreturn]] void InvalidSpec(const std::string& what) {
  throw Error(ErrorKind::kInvalidSpec, what);
}

void RequireFinite(double v, const char* field) {
  if (!std::isfinite(v)) InvalidSpec(std::string(field) + " must be finite");
}

}  // namespace

std::string_view RewardKindName(RewardKind kind) {
  for (const auto& e : kKinds) {
    if (e.kind == kind) return e.name;
  }
  return "unknown";
}

std::optional<RewardKind> ParseRewardKind(std::string_view name) {
  for (const auto& e : kKinds) {
    if (e.name == name) return e.kind;
  }
  return std::nullopt;
}

std::string RewardKindNames() {
  std::string out;
  for (const auto& e : kKinds) {
    if (!out.empty()) out += ", ";
    out += e.name;
  }
  return out;
}

MoralRewardSpec MoralRewardSpec::Deontological(double xi) {
  RewardParams p;
  p.xi = xi;
  return {RewardKind::kDeontological, p};
}

MoralRewardSpec MoralRewardSpec::VirtueKindness(double xi) {
  RewardParams p;
  p.xi = xi;
  return {RewardKind::kVirtueKindness, p};
}

MoralRewardSpec MoralRewardSpec::VirtueMixed(double beta, double xi_hat) {
  RewardParams p;
  p.beta = beta;
  p.xi_hat = xi_hat;
  return {RewardKind::kVirtueMixed, p};
}

MoralRewardSpec MoralRewardSpec::Altruistic(double weight_self, double weight_other) {
  RewardParams p;
  p.weight_self = weight_self;
  p.weight_other = weight_other;
  return {RewardKind::kAltruistic, p};
}

MoralRewardSpec MoralRewardSpec::InequityAverse(double disadvantageous,
                                                double advantageous) {
  RewardParams p;
  p.disadvantageous = disadvantageous;
  p.advantageous = advantageous;
  return {RewardKind::kInequityAverse, p};
}

MoralRewardSpec MoralRewardSpec::Composite(std::vector<Term> terms) {
  MoralRewardSpec spec(RewardKind::kComposite, {});
  spec.terms_ = std::move(terms);
  return spec;
}

bool operator==(const MoralRewardSpec& a, const MoralRewardSpec& b) {
  return a.kind_ == b.kind_ && a.params_ == b.params_ && a.terms_ == b.terms_;
}

void MoralRewardSpec::Validate() const {
  const RewardParams& p = params_;
  switch (kind_) {
    case RewardKind::kDeontological:
    case RewardKind::kVirtueKindness:
      RequireFinite(p.xi, "xi");
      if (!(p.xi > 0.0)) InvalidSpec("xi must be > 0");
      break;
    case RewardKind::kVirtueMixed:
      RequireFinite(p.beta, "beta");
      RequireFinite(p.xi_hat, "xi_hat");
      if (p.beta < 0.0 || p.beta > 1.0) InvalidSpec("beta must be in [0, 1]");
      break;
    case RewardKind::kAltruistic:
      RequireFinite(p.weight_self, "weight_self");
      RequireFinite(p.weight_other, "weight_other");
      break;
    case RewardKind::kInequityAverse:
      RequireFinite(p.disadvantageous, "disadvantageous");
      RequireFinite(p.advantageous, "advantageous");
      if (p.disadvantageous < 0.0) InvalidSpec("disadvantageous must be >= 0");
      if (p.advantageous < 0.0) InvalidSpec("advantageous must be >= 0");
      break;
    case RewardKind::kComposite: {
      if (terms_.empty()) InvalidSpec("composite needs at least one component");
      double sum = 0.0;
      for (const Term& t : terms_) {
        if (t.spec.kind() == RewardKind::kComposite) {
          InvalidSpec("composite components may not be composite");
        }
        RequireFinite(t.weight, "composite weight");
        t.spec.Validate();
        sum += t.weight;
      }
      if (sum == 0.0) InvalidSpec("composite weights must not sum to zero");
      break;
    }
    default:
      break;
  }
}

std::string MoralRewardSpec::Describe() const {
  std::ostringstream os;
  os << RewardKindName(kind_);
  const RewardParams& p = params_;
  switch (kind_) {
    case RewardKind::kDeontological:
    case RewardKind::kVirtueKindness:
      os << "(xi=" << p.xi << ")";
      break;
    case RewardKind::kVirtueMixed:
      os << "(beta=" << p.beta << ",xi_hat=" << p.xi_hat << ")";
      break;
    case RewardKind::kAltruistic:
      os << "(self=" << p.weight_self << ",other=" << p.weight_other << ")";
      break;
    case RewardKind::kInequityAverse:
      os << "(dis=" << p.disadvantageous << ",adv=" << p.advantageous << ")";
      break;
    case RewardKind::kComposite:
      os << "(";
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << "+";
        os << terms_[i].weight << "*" << terms_[i].spec.Describe();
      }
      os << ")";
      break;
    default:
      break;
  }
  return os.str();
}

double EqualityTerm(double own_payoff, double opp_payoff) {
  const double total = own_payoff + opp_payoff;
  if (!(total > 0.0)) {
    throw Error(ErrorKind::kDegenerateInput,
                "equality term needs a positive payoff sum");
  }
  return 1.0 - std::abs(own_payoff - opp_payoff) / total;
}

double SelfishReward(const RewardContext& ctx) { return ctx.own_payoff; }

double UtilitarianReward(const RewardContext& ctx) {
  return ctx.own_payoff + ctx.opp_payoff;
}

double DeontologicalReward(const RewardContext& ctx, double xi) {
  const bool violated = ctx.own_action == Action::kDefect &&
                        ctx.prev_opponent_action == Action::kCooperate;
  return violated ? -xi : 0.0;
}

double VirtueEqualityReward(const RewardContext& ctx) {
  return EqualityTerm(ctx.own_payoff, ctx.opp_payoff);
}

double VirtueKindnessReward(const RewardContext& ctx, double xi) {
  return ctx.own_action == Action::kCooperate ? xi : 0.0;
}

double VirtueMixedReward(const RewardContext& ctx, double beta, double xi_hat) {
  const double equality = beta * EqualityTerm(ctx.own_payoff, ctx.opp_payoff);
  if (ctx.own_action == Action::kCooperate) return equality + (1.0 - beta) * xi_hat;
  return equality;
}

double AltruisticReward(const RewardContext& ctx, double weight_self,
                        double weight_other) {
  return weight_self * ctx.own_payoff + weight_other * ctx.opp_payoff;
}

double InequityAverseReward(const RewardContext& ctx, double disadvantageous,
                            double advantageous) {
  const double behind = std::max(ctx.opp_payoff - ctx.own_payoff, 0.0);
  const double ahead = std::max(ctx.own_payoff - ctx.opp_payoff, 0.0);
  return ctx.own_payoff - disadvantageous * behind - advantageous * ahead;
}

double RawlsianMinReward(const RewardContext& ctx) {
  return std::min(ctx.own_payoff, ctx.opp_payoff);
}

double CompositeReward(const RewardContext& ctx,
                       std::span<const MoralRewardSpec::Term> terms) {
  if (terms.empty()) InvalidSpec("composite needs at least one component");
  double total = 0.0;
  for (const auto& t : terms) {
    if (t.spec.kind() == RewardKind::kComposite) {
      InvalidSpec("composite components may not be composite");
    }
    // A zero weight still evaluates its component so that degenerate inputs
    // are reported consistently.
    total += t.weight * EvaluateReward(t.spec, ctx);
  }
  return total;
}

double EvaluateReward(const MoralRewardSpec& spec, const RewardContext& ctx) {
  const RewardParams& p = spec.params();
  switch (spec.kind()) {
    case RewardKind::kSelfish:
      return SelfishReward(ctx);
    case RewardKind::kUtilitarian:
      return UtilitarianReward(ctx);
    case RewardKind::kDeontological:
      return DeontologicalReward(ctx, p.xi);
    case RewardKind::kVirtueEquality:
      return VirtueEqualityReward(ctx);
    case RewardKind::kVirtueKindness:
      return VirtueKindnessReward(ctx, p.xi);
    case RewardKind::kVirtueMixed:
      return VirtueMixedReward(ctx, p.beta, p.xi_hat);
    case RewardKind::kAltruistic:
      return AltruisticReward(ctx, p.weight_self, p.weight_other);
    case RewardKind::kInequityAverse:
      return InequityAverseReward(ctx, p.disadvantageous, p.advantageous);
    case RewardKind::kRawlsianMin:
      return RawlsianMinReward(ctx);
    case RewardKind::kComposite:
      return CompositeReward(ctx, spec.terms());
  }
  InvalidSpec("unknown reward kind");
}

}  // namespace moralsim

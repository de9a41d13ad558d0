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
#include "moralsim/rewards.hpp"
#include "support/bridge.hpp"

namespace moralsim {
namespace {

using testing::MakeContext;
constexpr Action C = Action::kCooperate;
constexpr Action D = Action::kDefect;

TEST_CASE("selfish") {
  CHECK(SelfishReward(MakeContext(D, C, 4, 1)) == 4);
  CHECK(SelfishReward(MakeContext(C, C, 3, 3)) == 3);
  CHECK(SelfishReward(MakeContext(C, D, 1, 4)) == 1);
}

TEST_CASE("utilitarian") {
  CHECK(UtilitarianReward(MakeContext(C, C, 3, 3)) == 6);
  CHECK(UtilitarianReward(MakeContext(D, C, 4, 1)) == 5);
  CHECK(UtilitarianReward(MakeContext(C, C, 0, 0)) == 0);
}

TEST_CASE("deontological") {
  CHECK(DeontologicalReward(MakeContext(D, C, 4, 1), 5) == -5);
  CHECK(DeontologicalReward(MakeContext(D, D, 2, 2), 5) == 0);
  CHECK(DeontologicalReward(MakeContext(C, C, 3, 3), 5) == 0);
  CHECK(DeontologicalReward(MakeContext(D, std::nullopt, 4, 1), 5) == 0);
}

TEST_CASE("virtue equality") {
  CHECK(VirtueEqualityReward(MakeContext(C, C, 3, 3)) == 1.0);
  CHECK(VirtueEqualityReward(MakeContext(D, C, 4, 1)) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(VirtueEqualityReward(MakeContext(D, D, 2, 2)) == 1.0);
}

TEST_CASE("equality term guards its denominator") {
  for (auto [a, b] : {std::pair{0.0, 0.0}, {-1.0, 1.0}, {-3.0, 1.0}}) {
    try {
      EqualityTerm(a, b);
      FAIL("expected DegenerateInput");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kDegenerateInput);
    }
  }
}

TEST_CASE("virtue kindness ignores history and payoffs") {
  for (std::optional<Action> prev : {std::optional<Action>(C), std::optional<Action>(D),
                                     std::optional<Action>()}) {
    CHECK(VirtueKindnessReward(MakeContext(C, prev, 1, 4), 5) == 5);
    CHECK(VirtueKindnessReward(MakeContext(D, prev, 4, 1), 5) == 0);
  }
}

TEST_CASE("virtue mixed") {
  CHECK(VirtueMixedReward(MakeContext(C, C, 3, 3), 0.5, 1) == 1.0);
  CHECK(VirtueMixedReward(MakeContext(C, C, 4, 1), 0, 1) == 1.0);
  CHECK(VirtueMixedReward(MakeContext(D, C, 4, 1), 0, 1) == 0.0);
}

TEST_CASE("altruistic") {
  CHECK(AltruisticReward(MakeContext(D, C, 4, 1), 0, 1) == 1);
  CHECK(AltruisticReward(MakeContext(C, C, 3, 3), 1, 1) == 6);
  CHECK(AltruisticReward(MakeContext(D, C, 4, 1), 1, 0) == 4);
}

TEST_CASE("inequity averse") {
  CHECK(InequityAverseReward(MakeContext(C, C, 3, 3), 0.7, 0.3) == 3);
  CHECK(InequityAverseReward(MakeContext(D, C, 4, 1), 0, 0.5) == 2.5);
  CHECK(InequityAverseReward(MakeContext(C, D, 1, 4), 1, 0) == -2);
}

TEST_CASE("rawlsian min") {
  CHECK(RawlsianMinReward(MakeContext(D, C, 4, 1)) == 1);
  CHECK(RawlsianMinReward(MakeContext(C, C, 3, 3)) == 3);
  CHECK(RawlsianMinReward(MakeContext(C, D, 1, 4)) == 1);
}

TEST_CASE("composite") {
  const RewardContext ctx = MakeContext(D, C, 4, 1);
  const std::vector<MoralRewardSpec::Term> single = {{MoralRewardSpec::Utilitarian(), 1.0}};
  CHECK(CompositeReward(ctx, single) == 5);

  const std::vector<MoralRewardSpec::Term> zero = {{MoralRewardSpec::Utilitarian(), 0.0},
                                                   {MoralRewardSpec::Selfish(), 0.0}};
  CHECK(CompositeReward(ctx, zero) == 0);

  const std::vector<MoralRewardSpec::Term> nested = {
      {MoralRewardSpec::Composite(single), 1.0}};
  CHECK_THROWS_AS(CompositeReward(ctx, nested), Error);
  CHECK_THROWS_AS(CompositeReward(ctx, {}), Error);
}

TEST_CASE("composite of equality and kindness matches virtue mixed on IPD joint actions") {
  const double beta = 0.3, xi_hat = 1.0;
  const std::vector<MoralRewardSpec::Term> terms = {
      {MoralRewardSpec::VirtueEquality(), beta},
      {MoralRewardSpec::VirtueKindness(xi_hat), 1 - beta}};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto& p = testing::kIpd[a][b];
      const RewardContext ctx = MakeContext(testing::ToAction(a), C, p[0], p[1]);
      CHECK(CompositeReward(ctx, terms) ==
            doctest::Approx(VirtueMixedReward(ctx, beta, xi_hat)).epsilon(1e-15));
    }
  }
}

TEST_CASE("evaluate dispatches to the named formula") {
  CHECK(EvaluateReward(MoralRewardSpec::Utilitarian(), MakeContext(C, C, 3, 3)) == 6);
  CHECK(EvaluateReward(MoralRewardSpec::Selfish(), MakeContext(D, D, 7.5, 1)) == 7.5);
  CHECK(EvaluateReward(MoralRewardSpec::Deontological(5), MakeContext(D, C, 4, 1)) == -5);
  CHECK(EvaluateReward(MoralRewardSpec::RawlsianMin(), MakeContext(D, C, 4, 1)) == 1);
}

TEST_CASE("property: library rewards agree with the reference formulas") {
  testing::ContextGen gen(11);
  using testing::RefKind;
  for (int i = 0; i < 20000; ++i) {
    const testing::RefContext r = gen.Next();
    const RewardContext ctx = testing::ToContext(r);
    CHECK(EvaluateReward(MoralRewardSpec::Selfish(), ctx) == RefReward(RefKind::kSelfish, r));
    CHECK(EvaluateReward(MoralRewardSpec::Utilitarian(), ctx) ==
          RefReward(RefKind::kUtilitarian, r));
    CHECK(EvaluateReward(MoralRewardSpec::Deontological(), ctx) ==
          RefReward(RefKind::kDeontological, r));
    CHECK(std::abs(EvaluateReward(MoralRewardSpec::VirtueEquality(), ctx) -
                   RefReward(RefKind::kEquality, r)) <= 1e-12);
    CHECK(EvaluateReward(MoralRewardSpec::VirtueKindness(), ctx) ==
          RefReward(RefKind::kKindness, r));
    CHECK(std::abs(EvaluateReward(MoralRewardSpec::VirtueMixed(), ctx) -
                   RefReward(RefKind::kMixed, r)) <= 1e-12);
  }
}

TEST_CASE("property: reductions and symmetries") {
  testing::ContextGen gen(12);
  for (int i = 0; i < 20000; ++i) {
    const RewardContext ctx = testing::ToContext(gen.Next());
    RewardContext swapped = ctx;
    std::swap(swapped.own_payoff, swapped.opp_payoff);
    CHECK(UtilitarianReward(ctx) == UtilitarianReward(swapped));
    CHECK(VirtueMixedReward(ctx, 1, 1) == VirtueEqualityReward(ctx));
    CHECK(AltruisticReward(ctx, 1, 1) == UtilitarianReward(ctx));
    CHECK(AltruisticReward(ctx, 1, 0) == SelfishReward(ctx));
    CHECK(InequityAverseReward(ctx, 0, 0) == SelfishReward(ctx));
    const double eq = VirtueEqualityReward(ctx);
    CHECK(eq >= 0.0);
    CHECK(eq <= 1.0);
    CHECK((eq == 1.0) == (ctx.own_payoff == ctx.opp_payoff));
    // Purity: a second evaluation gives the same bits.
    CHECK(EvaluateReward(MoralRewardSpec::VirtueMixed(0.25, 2), ctx) ==
          EvaluateReward(MoralRewardSpec::VirtueMixed(0.25, 2), ctx));
  }
}

TEST_CASE("equality is exactly indifferent between mutual cooperation and defection") {
  CHECK(VirtueEqualityReward(MakeContext(C, C, 3, 3)) == 1.0);
  CHECK(VirtueEqualityReward(MakeContext(D, D, 2, 2)) == 1.0);
}

TEST_CASE("spec validation") {
  CHECK_NOTHROW(MoralRewardSpec::VirtueMixed(0.5, 1).Validate());
  CHECK_THROWS_AS(MoralRewardSpec::VirtueMixed(1.5, 1).Validate(), Error);
  CHECK_THROWS_AS(MoralRewardSpec::Deontological(0).Validate(), Error);
  CHECK_THROWS_AS(MoralRewardSpec::VirtueKindness(-1).Validate(), Error);
  CHECK_THROWS_AS(MoralRewardSpec::InequityAverse(-0.1, 0).Validate(), Error);
  CHECK_THROWS_AS(MoralRewardSpec::Composite({}).Validate(), Error);
  const auto inner = MoralRewardSpec::Composite({{MoralRewardSpec::Selfish(), 1.0}});
  CHECK_THROWS_AS(MoralRewardSpec::Composite({{inner, 1.0}}).Validate(), Error);
  try {
    MoralRewardSpec::VirtueMixed(1.5, 1).Validate();
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidSpec);
    CHECK(std::string(e.what()).find("beta") != std::string::npos);
  }
}

TEST_CASE("kind names round-trip") {
  for (RewardKind k : {RewardKind::kSelfish, RewardKind::kUtilitarian,
                       RewardKind::kDeontological, RewardKind::kVirtueEquality,
                       RewardKind::kVirtueKindness, RewardKind::kVirtueMixed,
                       RewardKind::kAltruistic, RewardKind::kInequityAverse,
                       RewardKind::kRawlsianMin, RewardKind::kComposite}) {
    CHECK(ParseRewardKind(RewardKindName(k)) == k);
  }
  CHECK_FALSE(ParseRewardKind("hedonist").has_value());
  CHECK(RewardKindNames().find("virtue_kindness") != std::string::npos);
}

}  // namespace
}  // namespace moralsim

// Copyright 2026 The coexist Authors
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


#include <cmath>
#include <limits>
#include <random>

#include "coexist/equilibrium.hpp"
#include "doctest.h"
#include "oracle.hpp"

namespace coexist {
namespace {

using testing::AonCompetitiveObjective;
using testing::AonCooperativeObjective;
using testing::OracleAgrees;
using testing::PaperSlots;
using testing::TonCompetitiveObjective;
using testing::TonCooperativeObjective;

const SlotLengths kSmall{0.01, 1.01, 0.101};

TEST_CASE("msne thresholds and interior value") {
  const StageSolution s = Msne({5, 5}, kSmall, 4.646);
  CHECK(std::abs(s.thresholds.th0 - (-0.6812)) <= 1e-3);
  CHECK(std::abs(s.thresholds.th1 - 4.5450) <= 1e-3);
  CHECK(s.thresholds.th == s.thresholds.th1);
  CHECK(s.thresholds.regime == Regime::Interior);
  CHECK(std::abs(s.profile.tau_aon - 0.9295) <= 1e-4);
  CHECK(s.profile.tau_ton == 0.2);

  const StageSolution low = Msne({5, 5}, kSmall, 1.0);
  CHECK(low.thresholds.regime == Regime::ForcedOne);
  CHECK(low.profile.tau_aon == 1.0);
}

TEST_CASE("tau_T depends only on N_T") {
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int nt : {1, 2, 5, 10, 50}) {
    for (int k = 0; k < 50; ++k) {
      const NetworkSizes s{1 + k % 10, nt};
      const SlotLengths slots = PaperSlots(std::array{0.1, 1.0, 2.0}[k % 3], 0.01 + 0.1 * u(g));
      const double age = 20.0 * u(g);
      REQUIRE(Msne(s, slots, age).profile.tau_ton == 1.0 / nt);
      REQUIRE(CooperativeOptimum(s, slots, age).profile.tau_ton == 1.0 / nt);
    }
  }
}

TEST_CASE("single-node networks") {
  CHECK(Msne({1, 1}, PaperSlots(0.1), 0.5).profile.tau_aon == 1.0);
  CHECK(Msne({1, 1}, PaperSlots(0.1), 50.0).profile.tau_aon == 1.0);
  CHECK(Msne({1, 1}, PaperSlots(2.0), 0.5).profile.tau_aon == 0.0);
  CHECK(Msne({1, 1}, PaperSlots(2.0), 50.0).profile.tau_aon == 0.0);
  CHECK(Msne({1, 1}, PaperSlots(0.1), 1.0).thresholds.th0 ==
        -std::numeric_limits<double>::infinity());
  CHECK(Msne({1, 1}, PaperSlots(2.0), 1.0).thresholds.th0 ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("equal-slot equilibrium") {
  const SlotLengths eq = PaperSlots(1.0);
  CHECK(MsneEqualSlots({1, 3}, eq, 2.0).tau_aon == doctest::Approx(1.0));
  CHECK(MsneEqualSlots({5, 3}, eq, 4.9).tau_aon == 0.0);
  for (int nt : {1, 2, 7}) CHECK(MsneEqualSlots({2, nt}, eq, 3.0).tau_ton == 1.0 / nt);
  CHECK_THROWS_AS(MsneEqualSlots({1, 1}, kSmall, 2.0), InvalidArgument);

  for (int na = 1; na <= 10; ++na) {
    for (int nt = 1; nt <= 10; ++nt) {
      for (double age = 0.0; age < 40.0; age += 0.37) {
        REQUIRE(Msne({na, nt}, eq, age).profile == MsneEqualSlots({na, nt}, eq, age));
      }
    }
  }
}

TEST_CASE("cooperative optimum") {
  const StageSolution two = CooperativeOptimum({1, 1}, PaperSlots(1.0), 1.01);
  CHECK(two.profile.tau_aon == doctest::Approx(1.0));
  CHECK(two.profile.tau_ton == 1.0);

  const StageSolution big = CooperativeOptimum({5, 4}, PaperSlots(1.0), 10.0);
  CHECK(big.thresholds.regime == Regime::Interior);
  CHECK(big.profile.tau_aon > 0.0);
  CHECK(big.profile.tau_aon < 1.0);
  const double oracle =
      BestResponseOracle(AonCooperativeObjective({5, 4}, PaperSlots(1.0), 10.0), 1e-5);
  CHECK(std::abs(big.profile.tau_aon - oracle) <= 1e-5);
  CHECK(big.profile.tau_ton == 0.25);
}

TEST_CASE("expected stage payoffs") {
  const SlotLengths eq = PaperSlots(1.0);
  const StagePayoffs coop = ExpectedStagePayoffs(Cooperative{0.5}, {1, 1}, eq, {1.0, 1.0},
                                                 1.01, 1.0);
  CHECK(std::abs(coop.u_aon - (-1.515)) <= 1e-9);
  CHECK(std::abs(coop.u_ton - 0.505) <= 1e-9);

  const StagePayoffs nc = ExpectedStagePayoffs(Competitive{}, {1, 1}, eq, {1.0, 1.0}, 1.01, 1.0);
  CHECK(std::abs(nc.u_aon - (-2.02)) <= 1e-9);
  CHECK(nc.u_ton == 0.0);

  for (const StageMode& m : {StageMode{Competitive{}}, StageMode{Cooperative{0.3}}}) {
    const StagePayoffs quiet = ExpectedStagePayoffs(m, {3, 2}, eq, {0.0, 0.0}, 2.5, 1.0);
    CHECK(quiet.u_ton == 0.0);
    CHECK(quiet.u_aon == doctest::Approx(-(2.5 + eq.idle)));
  }
}

TEST_CASE("oracle examples") {
  const SlotLengths s = PaperSlots(0.1);
  CHECK(std::abs(BestResponseOracle(TonCompetitiveObjective({3, 4}, s, 0.4), 1e-4) - 0.25) <=
        1e-4);
  CHECK(BestResponseOracle(AonCompetitiveObjective({5, 5}, kSmall, 0.2, 2.0), 1e-4) >=
        1.0 - 1e-4);
  CHECK(std::abs(BestResponseOracle(AonCompetitiveObjective({5, 5}, kSmall, 0.2, 4.646),
                                    1e-4) -
                 0.9295) <= 1e-4 + 1e-4);
  CHECK_THROWS_AS(BestResponseOracle(TonCooperativeObjective({1, 1}, s), 0.02),
                  InvalidArgument);
}

TEST_CASE("closed forms agree with the grid oracle") {
  std::mt19937_64 g(42);
  const double step = 1e-3;
  for (int trial = 0; trial < 300; ++trial) {
    const testing::OracleCase c = testing::DrawOracleCase(g);
    CAPTURE(c.sizes.aon);
    CAPTURE(c.sizes.ton);
    CAPTURE(c.slots.collision);
    CAPTURE(c.age_msne);
    CAPTURE(c.age_coop);
    const AccessProfile ne = Msne(c.sizes, c.slots, c.age_msne).profile;
    CHECK(OracleAgrees(AonCompetitiveObjective(c.sizes, c.slots, ne.tau_ton, c.age_msne),
                       ne.tau_aon, step));
    CHECK(OracleAgrees(TonCompetitiveObjective(c.sizes, c.slots, ne.tau_aon), ne.tau_ton,
                       step));
    const AccessProfile hat = CooperativeOptimum(c.sizes, c.slots, c.age_coop).profile;
    CHECK(OracleAgrees(AonCooperativeObjective(c.sizes, c.slots, c.age_coop), hat.tau_aon,
                       step));
    CHECK(OracleAgrees(TonCooperativeObjective(c.sizes, c.slots), hat.tau_ton, step));
  }
}

TEST_CASE("msne is a mutual best response on a coarse grid") {
  std::mt19937_64 g(8);
  for (int trial = 0; trial < 300; ++trial) {
    const testing::OracleCase c = testing::DrawOracleCase(g);
    const AccessProfile ne = Msne(c.sizes, c.slots, c.age_msne).profile;
    const auto fa = AonCompetitiveObjective(c.sizes, c.slots, ne.tau_ton, c.age_msne);
    const auto ft = TonCompetitiveObjective(c.sizes, c.slots, ne.tau_aon);
    for (int k = 0; k <= 10; ++k) {
      REQUIRE(fa(k / 10.0) <= fa(ne.tau_aon) + 1e-9);
      REQUIRE(ft(k / 10.0) <= ft(ne.tau_ton) + 1e-9);
    }
  }
}

TEST_CASE("interior branch is continuous at the threshold") {
  for (double ratio : {0.1, 2.0}) {
    for (int na : {1, 2, 5, 10}) {
      for (int nt : {2, 5, 10}) {
        const SlotLengths s = PaperSlots(ratio);
        const StageSolution at = Msne({na, nt}, s, 0.0);
        const double th = at.thresholds.th;
        // A single AON node has a linear objective and jumps from 0 to 1 at th0.
        if (!(th > 0.0) || (na == 1 && at.thresholds.th == at.thresholds.th0)) continue;
        const StageSolution below = Msne({na, nt}, s, th);
        const StageSolution above = Msne({na, nt}, s, th + 1e-9);
        CAPTURE(na);
        CAPTURE(nt);
        CHECK(above.thresholds.regime == Regime::Interior);
        CHECK(std::abs(above.profile.tau_aon - below.profile.tau_aon) <= 1e-6);
      }
    }
  }
  for (double ratio : {0.1, 1.0, 2.0}) {
    for (int na : {2, 5, 10}) {
      const SlotLengths s = PaperSlots(ratio);
      const double th = CooperativeOptimum({na, 3}, s, 0.0).thresholds.th;
      CHECK(std::abs(CooperativeOptimum({na, 3}, s, th + 1e-9).profile.tau_aon -
                     CooperativeOptimum({na, 3}, s, th).profile.tau_aon) <= 1e-6);
    }
  }
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(Msne({5, 5}, kSmall, -1.0), InvalidArgument);
  CHECK_THROWS_AS(CooperativeOptimum({0, 5}, kSmall, 1.0), InvalidArgument);
  CHECK(ToString(Regime::ForcedOne) == "forced_one");
}

TEST_CASE("cooperation-beneficial P_R set") {
  const PrRange full = CooperationBeneficialPrSet({1, 1}, PaperSlots(1.0), 1.01, 1.0, 0.01);
  REQUIRE(full.intervals.size() == 1);
  CHECK(full.intervals[0].lo == 0.0);
  CHECK(full.intervals[0].hi == 1.0);

  const PrRange zero = CooperationBeneficialPrSet({1, 1}, PaperSlots(2.0), 1.01, 1.0, 0.01);
  REQUIRE(zero.intervals.size() == 1);
  CHECK(zero.intervals[0].lo == 0.0);
  CHECK(zero.intervals[0].hi == 0.0);

  const PrRange five = CooperationBeneficialPrSet({5, 5}, PaperSlots(1.0), 1.01, 1.0, 0.01);
  REQUIRE(!five.intervals.empty());
  CHECK(five.intervals.front().lo == 0.0);
  CHECK(five.intervals.back().hi < full.intervals[0].hi);

  CHECK_THROWS_AS(CooperationBeneficialPrSet({1, 1}, kSmall, 1.0, 1.0, 0.5), InvalidArgument);
}

}  // namespace
}  // namespace coexist

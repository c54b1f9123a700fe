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

#ifndef COEXIST_TESTS_ORACLE_HPP_
#define COEXIST_TESTS_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <array>
#include <functional>
#include <random>

#include "coexist/equilibrium.hpp"
#include "coexist/model.hpp"

namespace coexist::testing {

// Slot law by enumerating all 2^(N_A + N_T) transmit patterns.
inline SlotProbabilities EnumerateSlot(const NetworkSizes& sizes,
                                       const AccessProfile& profile) {
  const int na = sizes.aon;
  const int n = na + sizes.ton;
  SlotProbabilities p;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double w = 1.0;
    int count = 0;
    int who = -1;
    for (int k = 0; k < n; ++k) {
      const double tau = k < na ? profile.tau_aon : profile.tau_ton;
      if (mask & (1u << k)) {
        w *= tau;
        ++count;
        who = k;
      } else {
        w *= 1.0 - tau;
      }
    }
    if (count == 0) {
      p.p_idle += w;
    } else if (count == 1) {
      p.p_success_total += w;
      if (who == 0) p.p_success_node_aon += w;
      if (who == na) p.p_success_node_ton += w;
      if (who != 0) p.p_busy_aon += w;
      if (who != na) p.p_busy_ton += w;
    } else {
      p.p_collision += w;
    }
  }
  return p;
}

inline SlotProbabilities Mix(const SlotProbabilities& a, const SlotProbabilities& b,
                             double wa) {
  const double wb = 1.0 - wa;
  SlotProbabilities m;
  m.p_idle = wa * a.p_idle + wb * b.p_idle;
  m.p_success_total = wa * a.p_success_total + wb * b.p_success_total;
  m.p_success_node_aon = wa * a.p_success_node_aon + wb * b.p_success_node_aon;
  m.p_success_node_ton = wa * a.p_success_node_ton + wb * b.p_success_node_ton;
  m.p_busy_aon = wa * a.p_busy_aon + wb * b.p_busy_aon;
  m.p_busy_ton = wa * a.p_busy_ton + wb * b.p_busy_ton;
  m.p_collision = wa * a.p_collision + wb * b.p_collision;
  return m;
}

inline SlotProbabilities EnumerateSlotCooperative(const NetworkSizes& sizes,
                                                  const AccessProfile& profile,
                                                  double p_r) {
  return Mix(EnumerateSlot(sizes, {profile.tau_aon, 0.0}),
             EnumerateSlot(sizes, {0.0, profile.tau_ton}), p_r);
}

// Expected age of AON node 0 after one slot, every node starting at `age`,
// by enumerating the joint pattern and applying the update rule.
inline double EnumerateNodeAge(const NetworkSizes& sizes, const AccessProfile& profile,
                               const SlotLengths& slots, double age) {
  const int na = sizes.aon;
  const int n = na + sizes.ton;
  double e = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double w = 1.0;
    int count = 0;
    int who = -1;
    for (int k = 0; k < n; ++k) {
      const double tau = k < na ? profile.tau_aon : profile.tau_ton;
      const bool on = mask & (1u << k);
      w *= on ? tau : 1.0 - tau;
      if (on) {
        ++count;
        who = k;
      }
    }
    double next;
    if (count == 0) {
      next = age + slots.idle;
    } else if (count == 1) {
      next = who == 0 ? slots.success : age + slots.success;
    } else {
      next = age + slots.collision;
    }
    e += w * next;
  }
  return e;
}

// Stage objectives of one network with the other's probability fixed.
inline std::function<double(double)> AonCompetitiveObjective(const NetworkSizes& sizes,
                                                             const SlotLengths& slots,
                                                             double tau_ton, double age) {
  return [=](double tau) {
    return -ExpectedNetworkAge(SlotProbabilitiesCompetitive(sizes, {tau, tau_ton}), age,
                               slots);
  };
}

inline std::function<double(double)> TonCompetitiveObjective(const NetworkSizes& sizes,
                                                             const SlotLengths& slots,
                                                             double tau_aon) {
  return [=](double tau) {
    return ExpectedNetworkThroughput(SlotProbabilitiesCompetitive(sizes, {tau_aon, tau}),
                                     slots, 1.0);
  };
}

// Heads stage of cooperation: the AON alone on the channel.
inline std::function<double(double)> AonCooperativeObjective(const NetworkSizes& sizes,
                                                             const SlotLengths& slots,
                                                             double age) {
  return [=](double tau) {
    return -ExpectedNetworkAge(SlotProbabilitiesCompetitive(sizes, {tau, 0.0}), age, slots);
  };
}

inline std::function<double(double)> TonCooperativeObjective(const NetworkSizes& sizes,
                                                             const SlotLengths& slots) {
  return [=](double tau) {
    return ExpectedNetworkThroughput(SlotProbabilitiesCompetitive(sizes, {0.0, tau}), slots,
                                     1.0);
  };
}

// The closed form agrees with a grid argmax when it lies within one grid
// step of it, or when its objective value ties the grid maximum up to
// round-off (the objective can be flat to 1e-15 near a boundary).
inline bool OracleAgrees(const std::function<double(double)>& objective, double closed,
                         double grid_step) {
  const double argmax = BestResponseOracle(objective, grid_step);
  if (std::abs(closed - argmax) <= grid_step * (1.0 + 1e-9)) return true;
  const double best = objective(argmax);
  return objective(closed) >= best - 1e-12 * std::max(1.0, std::abs(best));
}

inline SlotLengths PaperSlots(double collision_ratio, double beta = 0.01) {
  return {beta, 1.0 + beta, collision_ratio * (1.0 + beta)};
}

struct OracleCase {
  NetworkSizes sizes;
  SlotLengths slots;
  double age_msne = 0.0;
  double age_coop = 0.0;
};

// N_A, N_T in 1..10, sigma_C / sigma_S in {0.1, 1, 2}, ages uniform on
// [0, 3 th] (3 N_A sigma_S when th is not a positive finite number).
template <typename Gen>
OracleCase DrawOracleCase(Gen& g) {
  std::uniform_int_distribution<int> size(1, 10);
  std::uniform_int_distribution<int> ratio(0, 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  OracleCase c;
  c.sizes = {size(g), size(g)};
  c.slots = PaperSlots(std::array{0.1, 1.0, 2.0}[ratio(g)]);
  auto span = [&](double th) {
    return std::isfinite(th) && th > 0.0 ? 3.0 * th : 3.0 * c.sizes.aon * c.slots.success;
  };
  c.age_msne = u(g) * span(Msne(c.sizes, c.slots, 0.0).thresholds.th);
  c.age_coop = u(g) * span(CooperativeOptimum(c.sizes, c.slots, 0.0).thresholds.th);
  return c;
}

}  // namespace coexist::testing

#endif  // COEXIST_TESTS_ORACLE_HPP_

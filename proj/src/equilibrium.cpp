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

#include "coexist/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <type_traits>
#include <variant>

namespace coexist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPayoffTieTolerance = 1e-12;

void RequireAge(double network_age) {
  if (!(network_age >= 0.0)) {
    throw InvalidArgument("network age must be non-negative");
  }
}

double CheckedProbability(double value, const char* what) {
  if (!(value >= -kBoundaryTolerance && value <= 1.0 + kBoundaryTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " closed form left [0,1]: " << value;
    throw OutOfRange(msg.str());
  }
  return std::clamp(value, 0.0, 1.0);
}

// Shared three-way case split. At a tie th0 == th1 the AON stays silent.
Regime Classify(double network_age, ThresholdAges& t) {
  t.th = std::max(t.th0, t.th1);
  if (network_age > t.th) return Regime::Interior;
  if (t.th0 == t.th1) return Regime::ForcedZero;
  return t.th == t.th1 ? Regime::ForcedOne : Regime::ForcedZero;
}

double Pow(double base, int n) { return std::pow(base, n); }

}  // namespace

std::string ToString(Regime regime) {
  switch (regime) {
    case Regime::Interior:
      return "interior";
    case Regime::ForcedOne:
      return "forced_one";
    case Regime::ForcedZero:
      return "forced_zero";
  }
  return "?";
}

AccessProfile MsneEqualSlots(const NetworkSizes& sizes, const SlotLengths& slots,
                             double network_age) {
  sizes.Validate();
  RequireAge(network_age);
  if (slots.success != slots.collision) {
    throw InvalidArgument("MsneEqualSlots needs equal success and collision slots");
  }
  const double na = sizes.aon;
  AccessProfile p;
  p.tau_ton = 1.0 / sizes.ton;
  if (network_age > na * (slots.success - slots.idle)) {
    p.tau_aon = CheckedProbability(
        (na * (slots.idle - slots.success) + network_age) /
            (na * (slots.idle - slots.collision + network_age)),
        "equal-slot equilibrium");
  }
  return p;
}

StageSolution Msne(const NetworkSizes& sizes, const SlotLengths& slots,
                   double network_age) {
  sizes.Validate();
  RequireAge(network_age);
  const double na = sizes.aon;
  const double nt = sizes.ton;
  const double ss = slots.success;
  const double sc = slots.collision;
  const double si = slots.idle;

  StageSolution out;
  ThresholdAges& t = out.thresholds;
  if (ss == sc) {
    out.profile = MsneEqualSlots(sizes, slots, network_age);
    t.th0 = na * (ss - si);
    t.th1 = 0.0;
    t.regime = Classify(network_age, t);
    return out;
  }

  const double tau_t = 1.0 / sizes.ton;
  out.profile.tau_ton = tau_t;
  t.th1 = na * (ss - sc);
  if (sizes.ton == 1) {
    // The TON always transmits, so the AON can never succeed; it only
    // chooses between colliding and letting the TON's success slot pass.
    t.th0 = ss > sc ? -kInf : kInf;
  } else {
    t.th0 = na * (ss - si) - na * nt * tau_t * (ss - sc) / (1.0 - tau_t);
  }
  t.regime = Classify(network_age, t);

  switch (t.regime) {
    case Regime::ForcedOne:
      out.profile.tau_aon = 1.0;
      break;
    case Regime::ForcedZero:
      out.profile.tau_aon = 0.0;
      break;
    case Regime::Interior: {
      if (sizes.aon == 1) {
        // Numerator and denominator coincide; the objective is linear in tau.
        out.profile.tau_aon = 1.0;
        break;
      }
      const double cross = na * nt * tau_t * (ss - sc);
      const double num = (1.0 - tau_t) * (network_age - na * (ss - si)) + cross;
      const double den =
          (1.0 - tau_t) * na * (network_age + (si - sc) - na * (ss - sc)) + cross;
      out.profile.tau_aon = CheckedProbability(num / den, "equilibrium");
      break;
    }
  }
  return out;
}

StageSolution CooperativeOptimum(const NetworkSizes& sizes,
                                 const SlotLengths& slots, double network_age) {
  sizes.Validate();
  RequireAge(network_age);
  const double na = sizes.aon;
  StageSolution out;
  out.profile.tau_ton = 1.0 / sizes.ton;
  ThresholdAges& t = out.thresholds;
  t.th0 = na * (slots.success - slots.idle);
  t.th1 = na * (slots.success - slots.collision);
  t.regime = Classify(network_age, t);
  switch (t.regime) {
    case Regime::ForcedOne:
      out.profile.tau_aon = 1.0;
      break;
    case Regime::ForcedZero:
      out.profile.tau_aon = 0.0;
      break;
    case Regime::Interior:
      if (sizes.aon == 1) {
        out.profile.tau_aon = 1.0;
        break;
      }
      out.profile.tau_aon = CheckedProbability(
          (network_age - t.th0) /
              (na * (network_age + (slots.idle - slots.collision) - t.th1)),
          "cooperative optimum");
      break;
  }
  return out;
}

StagePayoffs ExpectedStagePayoffs(const StageMode& mode, const NetworkSizes& sizes,
                                  const SlotLengths& slots,
                                  const AccessProfile& profile,
                                  double network_age, double rate) {
  const SlotProbabilities probs = std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Competitive>) {
          return SlotProbabilitiesCompetitive(sizes, profile);
        } else {
          return SlotProbabilitiesCooperative(sizes, profile, m.p_r);
        }
      },
      mode);
  StagePayoffs u;
  u.u_ton = ExpectedNetworkThroughput(probs, slots, rate);
  u.u_aon = -ExpectedNetworkAge(probs, network_age, slots);
  return u;
}

double BestResponseOracle(const std::function<double(double)>& objective,
                          double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.01)) {
    throw InvalidArgument("oracle grid step must lie in (0, 0.01]");
  }
  const auto n = static_cast<long>(std::llround(1.0 / grid_step));
  double best_tau = 0.0;
  double best = objective(0.0);
  for (long k = 1; k <= n; ++k) {
    const double tau = std::min(1.0, static_cast<double>(k) * grid_step);
    const double v = objective(tau);
    if (v > best) {
      best = v;
      best_tau = tau;
    }
  }
  return best_tau;
}

PrRange CooperationBeneficialPrSet(const NetworkSizes& sizes,
                                   const SlotLengths& slots, double network_age,
                                   double rate, double pr_grid_step) {
  if (!(pr_grid_step > 0.0 && pr_grid_step <= 0.01)) {
    throw InvalidArgument("P_R grid step must lie in (0, 0.01]");
  }
  const AccessProfile ne = Msne(sizes, slots, network_age).profile;
  const AccessProfile hat = CooperativeOptimum(sizes, slots, network_age).profile;
  const StagePayoffs compete =
      ExpectedStagePayoffs(Competitive{}, sizes, slots, ne, network_age, rate);

  PrRange out;
  const auto n = static_cast<long>(std::llround(1.0 / pr_grid_step));
  bool open = false;
  for (long k = 0; k <= n; ++k) {
    const double pr = std::min(1.0, static_cast<double>(k) * pr_grid_step);
    const StagePayoffs coop = ExpectedStagePayoffs(Cooperative{pr}, sizes, slots,
                                                   hat, network_age, rate);
    const bool both = coop.u_ton >= compete.u_ton - kPayoffTieTolerance &&
                      coop.u_aon >= compete.u_aon - kPayoffTieTolerance;
    if (both && open) {
      out.intervals.back().hi = pr;
    } else if (both) {
      out.intervals.push_back({pr, pr});
    }
    open = both;
  }

  const int na = sizes.aon;
  const int nt = sizes.ton;
  const SlotProbabilities nc = SlotProbabilitiesCompetitive(sizes, ne);
  const double ton_alone_idle = Pow(1.0 - hat.tau_ton, nt);
  const double ton_alone_succ =
      nt * hat.tau_ton * Pow(1.0 - hat.tau_ton, nt - 1);
  const double aon_lone = hat.tau_aon * Pow(1.0 - hat.tau_aon, na - 1);
  const double di = slots.idle - slots.collision;
  const double ds = slots.success - slots.collision;
  const double num = network_age * nc.p_success_node_aon -
                     di * (nc.p_idle - ton_alone_idle) -
                     ds * (nc.p_success_total - ton_alone_succ);
  const double den = network_age * aon_lone -
                     di * (Pow(1.0 - hat.tau_aon, na) - ton_alone_idle) -
                     ds * (na * aon_lone - ton_alone_succ);
  out.printed_lower = num / den;
  out.printed_upper = 1.0 - Pow(1.0 - ne.tau_aon, na);
  return out;
}

}  // namespace coexist

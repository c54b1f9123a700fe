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

#ifndef COEXIST_EQUILIBRIUM_HPP_
#define COEXIST_EQUILIBRIUM_HPP_

#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "coexist/model.hpp"

// Stage-game solutions. Both games are parameterized by the AON network age
// at the start of the stage. The TON always plays 1/N_T; the AON's access
// probability switches between "always", "never" and an interior value
// depending on where the network age sits relative to two threshold ages.
namespace coexist {

// The closed-form access probability fell outside [0,1] by more than the
// clamping tolerance; the parameters are outside the regime the formulas
// describe.
class OutOfRange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Values within this distance of [0,1] are clamped; anything further raises.
inline constexpr double kBoundaryTolerance = 1e-9;

enum class Regime { Interior, ForcedOne, ForcedZero };

std::string ToString(Regime regime);

struct ThresholdAges {
  double th0 = 0.0;  // below it the AON stays silent
  double th1 = 0.0;  // below it the AON always transmits
  double th = 0.0;   // max(th0, th1)
  Regime regime = Regime::Interior;
};

struct StageSolution {
  AccessProfile profile;
  ThresholdAges thresholds;
};

// Mixed-strategy Nash equilibrium of the competitive stage game.
// Equal success and collision lengths are routed to MsneEqualSlots.
StageSolution Msne(const NetworkSizes& sizes, const SlotLengths& slots,
                   double network_age);

// Closed form of the competitive equilibrium when success and collision
// slots have the same length; the AON's choice then ignores the TON.
AccessProfile MsneEqualSlots(const NetworkSizes& sizes, const SlotLengths& slots,
                             double network_age);

// Jointly optimal access when the device grants the channel to one network
// at a time. Each network only contends with itself.
StageSolution CooperativeOptimum(const NetworkSizes& sizes,
                                 const SlotLengths& slots, double network_age);

struct StagePayoffs {
  double u_ton = 0.0;  // expected network throughput (bits)
  double u_aon = 0.0;  // minus the expected network age at the stage end
};

struct Competitive {};
struct Cooperative {
  double p_r = 0.5;
};
using StageMode = std::variant<Competitive, Cooperative>;

StagePayoffs ExpectedStagePayoffs(const StageMode& mode, const NetworkSizes& sizes,
                                  const SlotLengths& slots,
                                  const AccessProfile& profile,
                                  double network_age, double rate);

// Exhaustive search of objective over {0, step, 2 step, ..., 1}; returns the
// first maximizer. Pass the negated age to minimize age. Intended as an
// independent check of the closed forms.
double BestResponseOracle(const std::function<double(double)>& objective,
                          double grid_step);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct PrRange {
  // Grid points where both networks weakly prefer the cooperative optimum to
  // the equilibrium, merged into closed intervals of consecutive points.
  std::vector<Interval> intervals;
  // Closed-form bounds as printed for the one-shot comparison; reported only.
  double printed_lower = 0.0;
  double printed_upper = 0.0;
};

PrRange CooperationBeneficialPrSet(const NetworkSizes& sizes,
                                   const SlotLengths& slots, double network_age,
                                   double rate, double pr_grid_step);

}  // namespace coexist

#endif  // COEXIST_EQUILIBRIUM_HPP_

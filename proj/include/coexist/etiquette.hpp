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

#ifndef COEXIST_ETIQUETTE_HPP_
#define COEXIST_ETIQUETTE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "coexist/model.hpp"
#include "coexist/sim.hpp"

// Grim-trigger coexistence etiquette.
//
// Each stage the device recommends (Access, Backoff) on Heads and
// (Backoff, Access) on Tails, written (AON action, TON action). Both networks
// observe the previous stage's actions. After the first stage in which the
// played actions differ from the recommendation, both networks play the
// competitive equilibrium forever.
//
// Obedience is self-enforcing when neither network gains from a one-stage
// unilateral deviation followed by perpetual competition, for either
// recommendation. That gives four inequalities, indexed here 0..3:
//   0: AON under Heads, obey (A,B) vs. back off (B,B)
//   1: TON under Heads, obey (A,B) vs. access (A,A)
//   2: AON under Tails, obey (B,A) vs. access (A,A)
//   3: TON under Tails, obey (B,A) vs. back off (B,B)
namespace coexist {

// A network either accesses the channel (contends with its optimal
// cooperative probability) or backs off (stays silent).
struct ActionProfile {
  bool aon_access = false;
  bool ton_access = false;
  friend bool operator==(const ActionProfile&, const ActionProfile&) = default;
};

ActionProfile Recommended(Recommendation rec);

// Compliance indicator for one stage.
bool Complies(Recommendation rec, const ActionProfile& played);

enum class DeviationCase {
  HeadsTonDeviates,  // (A,A)
  HeadsAonDeviates,  // (B,B)
  TailsAonDeviates,  // (A,A)
  TailsTonDeviates,  // (B,B)
};

Recommendation RecommendationOf(DeviationCase c);
Network DeviatorOf(DeviationCase c);
ActionProfile PlayedProfile(DeviationCase c);

struct Obey {
  Recommendation recommendation = Recommendation::Heads;
};

using StageOneCase = std::variant<Obey, DeviationCase>;

// Expected network age after stage 1 for the given stage-1 actions, with
// accessing networks using profile_hat (the cooperative optimum at
// network_age).
double ExpectedNextNetworkAge(const StageOneCase& c, const NetworkSizes& sizes,
                              const SlotLengths& slots,
                              const AccessProfile& profile_hat,
                              double network_age);

// Expected TON network throughput in stage 1 for the same cases.
double ExpectedStageOneThroughput(const StageOneCase& c, const NetworkSizes& sizes,
                                  const SlotLengths& slots,
                                  const AccessProfile& profile_hat, double rate);

// Unilateral deviation injected at a given stage (1-based).
struct Deviation {
  int stage = 1;
  Network deviator = Network::Aon;
};

struct EtiquetteConfig {
  ScenarioParams params;
  int n_stages = 300;
  std::uint64_t seed = 1;
  // Overrides the device coin of stage 1 (the coin is still drawn).
  std::optional<Recommendation> first_recommendation;
  std::optional<Deviation> deviation;
};

struct EtiquetteRecord {
  StageRecord stage;
  ActionProfile played;
  bool competing = false;  // grim trigger already active in this stage
  bool obeyed = true;      // compliance indicator; false in competing stages
};

using EtiquetteTrace = std::vector<EtiquetteRecord>;

struct EtiquetteOutcome {
  double stage_one_aon = 0.0;     // realized u_1
  double stage_one_ton = 0.0;
  double continuation_aon = 0.0;  // sum_{n>=2} alpha^(n-1) u_n
  double continuation_ton = 0.0;
  double u_aon_discounted = 0.0;  // (1 - alpha)(u_1 + continuation)
  double u_ton_discounted = 0.0;
  int trigger_stage = 0;          // first competing stage, 0 if none
};

// Plays one trajectory of the etiquette. Streams are consumed exactly as in
// the sim module, so trajectories with the same seed share slot randomness.
EtiquetteOutcome PlayEtiquette(const EtiquetteConfig& config,
                               EtiquetteTrace* trace = nullptr);

struct DeviationReport {
  // Estimated left minus right side of each inequality, per the index order
  // above. Stage-1 terms are exact; continuations are paired Monte Carlo.
  std::array<Estimate, 4> margins;
  // Realized stage-1 payoffs of the four simulated branches, in the order
  // obey-Heads, obey-Tails, (B,B), (A,A); used to cross-check the exact terms.
  std::array<Estimate, 4> stage_one_aon;
  std::array<Estimate, 4> stage_one_ton;

  bool Holds(int i) const { return margins[i].mean >= 0.0; }
  // The sign of the margin is resolved beyond two standard errors.
  bool Decided(int i) const;
  bool TonPrefers() const { return Holds(1) && Holds(3); }
  bool AonPrefers() const { return Holds(0) && Holds(2); }
  bool AllHold() const { return TonPrefers() && AonPrefers(); }
};

DeviationReport DeviationInequalities(const ScenarioParams& params, int n_runs,
                                      int n_stages, std::uint64_t seed,
                                      int threads = 1);

enum class Feasibility { Feasible, Infeasible, Indeterminate };

std::string ToString(Feasibility f);

// Feasible when every margin is resolved non-negative, Infeasible when any
// margin is resolved negative, Indeterminate otherwise.
Feasibility Classify(const DeviationReport& report);

Feasibility SpeFeasible(const ScenarioParams& params, int n_runs, int n_stages,
                        std::uint64_t seed, int threads = 1);

struct RegionCell {
  int alpha_index = 0;
  int pr_index = 0;
};

// Rows follow alpha_axis, columns follow pr_axis.
struct RegionGrid {
  using BoolGrid = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

  std::vector<double> alpha_axis;
  std::vector<double> pr_axis;
  BoolGrid ton_prefers;
  BoolGrid aon_prefers;
  BoolGrid spe;            // ton_prefers && aon_prefers
  BoolGrid indeterminate;  // Classify(...) == Indeterminate
  std::array<Eigen::ArrayXXd, 4> margin;
  std::array<Eigen::ArrayXXd, 4> margin_se;
  // Cell pairs (lower alpha, higher alpha) in one P_R column where the lower
  // alpha is resolved feasible and the higher one resolved infeasible.
  std::vector<std::pair<RegionCell, RegionCell>> monotonicity_flags;

  int SpeCount() const { return static_cast<int>(spe.count()); }
};

// Evaluates every (alpha, P_R) cell with seed DeriveSeed(seed, {i, j}).
RegionGrid RegionSweep(const ScenarioParams& params,
                       const std::vector<double>& alpha_grid,
                       const std::vector<double>& pr_grid, int n_runs,
                       int n_stages, std::uint64_t seed, int threads = 1);

}  // namespace coexist

#endif  // COEXIST_ETIQUETTE_HPP_

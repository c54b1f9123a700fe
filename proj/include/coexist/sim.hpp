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

#ifndef COEXIST_SIM_HPP_
#define COEXIST_SIM_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "coexist/equilibrium.hpp"
#include "coexist/model.hpp"

// Repeated-game engine.
//
// A run plays n_stages stages from a uniform initial age. Every stage draws,
// in this order, one uniform for the device coin (even when competing, so
// streams of different modes stay aligned) and then one uniform per node via
// SampleSlot. The realized stage payoffs are
//   u_ton = sigma_S * rate / N_T on a TON success, 0 otherwise,
//   u_aon = -(network age after the slot),
// and the run accumulates (1 - alpha) * sum_n alpha^(n-1) u_n. Truncating
// the infinite sum at n_stages drops at most alpha^n_stages * sup|u|.
//
// Run k of a Monte Carlo batch with master seed s uses the stream
// Rng(DeriveSeed(s, {k})).
namespace coexist {

enum class Mode { Competitive, Cooperative };

std::string ToString(Mode mode);

struct RunConfig {
  ScenarioParams params;
  int n_stages = 1000;
  Mode mode = Mode::Competitive;
  std::uint64_t seed = 1;
  // Accumulate the expected stage payoff of the chosen profile instead of
  // the realized one. The state still evolves by the sampled slot.
  bool accumulate_expected = false;

  void Validate() const;
};

struct RunResult {
  double u_aon_discounted = 0.0;
  double u_ton_discounted = 0.0;
  // Share of counted stages with tau_aon == 1 (resp. 0). Competitive runs
  // count every stage, cooperative runs only stages granted to the AON.
  double freq_tau_one = 0.0;
  double freq_tau_zero = 0.0;
  AgeState final_ages = AgeState::Uniform(1, 0.0);
};

// Per-stage record, filled only when a trace is requested.
struct StageRecord {
  int stage = 0;  // 1-based
  double network_age_before = 0.0;
  Recommendation recommendation = Recommendation::Heads;
  AccessProfile profile;  // access probabilities actually used in the slot
  SlotMode slot_mode;
  SlotEvent event;
  double u_aon = 0.0;
  double u_ton = 0.0;
};

using StageTrace = std::vector<StageRecord>;

RunResult RunCompetition(const RunConfig& config, StageTrace* trace = nullptr);
RunResult RunCooperation(const RunConfig& config, StageTrace* trace = nullptr);
RunResult Run(const RunConfig& config, StageTrace* trace = nullptr);

struct Estimate {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
};

// Order-stable summary of values listed by run index: pairwise summation,
// sample standard deviation over sqrt(n). Constant input (including a
// single value) gives that value exactly with se 0.
Estimate Summarize(std::span<const double> values);

struct Aggregate {
  int n_runs = 0;
  Estimate u_aon;
  Estimate u_ton;
  Estimate freq_tau_one;
  Estimate freq_tau_zero;
};

// Calls task(i) for i in [0, n) on up to `threads` workers. Each index is
// executed exactly once; callers write into slot i so the result never
// depends on the schedule.
void ParallelFor(int n, int threads, const std::function<void(int)>& task);

// n_runs independent runs; run k uses DeriveSeed(config.seed, {k}).
Aggregate MonteCarlo(const RunConfig& config, int n_runs, int threads = 1);

struct Gain {
  Estimate aon;  // U_aon(cooperation) - U_aon(competition)
  Estimate ton;
};

// Cooperation minus competition from two batches sharing the master seed,
// paired run by run. With self_test both batches run the competitive mode,
// so the gain is identically zero.
Gain GainOfCooperation(const ScenarioParams& params, int n_runs, int n_stages,
                       std::uint64_t seed, int threads = 1,
                       bool self_test = false);

}  // namespace coexist

#endif  // COEXIST_SIM_HPP_

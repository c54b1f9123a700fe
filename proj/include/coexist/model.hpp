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

#ifndef COEXIST_MODEL_HPP_
#define COEXIST_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "coexist/rng.hpp"

// Slotted collision channel shared by an age-optimizing network (AON) and a
// throughput-optimizing network (TON).
//
// Every node of a network transmits in a slot independently with its
// network's access probability. A slot with no transmitter is idle, a slot
// with exactly one transmitter is a success, anything else is a collision.
namespace coexist {

// Raised when a value violates a documented precondition or invariant.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Network { Aon, Ton };

// Durations of idle, successful and collision slots.
struct SlotLengths {
  double idle = 0.01;
  double success = 1.01;
  double collision = 1.01;

  // Throws InvalidArgument unless all lengths are positive and idle < success.
  void Validate() const;
};

struct NetworkSizes {
  int aon = 1;
  int ton = 1;

  void Validate() const;
};

struct ScenarioParams {
  NetworkSizes sizes;
  SlotLengths slots;
  double rate = 1.0;
  double alpha = 0.9;
  double p_r = 0.5;
  // Age of every AON node at the start of stage 1.
  double initial_age = 1.01;

  void Validate() const;
};

// Per-node transmit probabilities of the two networks in one stage.
struct AccessProfile {
  double tau_aon = 0.0;
  double tau_ton = 0.0;

  void Validate() const;
  friend bool operator==(const AccessProfile&, const AccessProfile&) = default;
};

// Outcome probabilities of a single slot. The per-node fields describe one
// representative node of each network (all nodes of a network are alike).
struct SlotProbabilities {
  double p_idle = 0.0;
  double p_success_total = 0.0;
  double p_success_node_aon = 0.0;
  double p_success_node_ton = 0.0;
  double p_busy_aon = 0.0;
  double p_busy_ton = 0.0;
  double p_collision = 0.0;

  // Expected slot duration p_I sigma_I + p_S sigma_S + p_C sigma_C.
  double MeanSlotLength(const SlotLengths& slots) const;

  friend bool operator==(const SlotProbabilities&,
                         const SlotProbabilities&) = default;
};

// Device recommendation for a stage: Heads grants the AON access, Tails the TON.
enum class Recommendation { Heads, Tails };

// Which networks may contend in a slot. Competitive lets both contend; a
// cooperative slot follows the recommendation and silences the other network.
struct SlotMode {
  std::optional<Recommendation> recommendation;

  static SlotMode Competitive() { return {}; }
  static SlotMode Cooperative(Recommendation r) { return {r}; }
};

// Realized slot: Idle | SuccessAon(i) | SuccessTon(i) | Collision.
struct SlotEvent {
  enum class Kind : std::uint8_t { Idle, SuccessAon, SuccessTon, Collision };

  Kind kind = Kind::Idle;
  int node = -1;  // transmitter index for the two success kinds, else -1

  static SlotEvent Idle() { return {Kind::Idle, -1}; }
  static SlotEvent Collision() { return {Kind::Collision, -1}; }
  static SlotEvent SuccessAon(int i) { return {Kind::SuccessAon, i}; }
  static SlotEvent SuccessTon(int i) { return {Kind::SuccessTon, i}; }

  friend bool operator==(const SlotEvent&, const SlotEvent&) = default;
};

std::string ToString(const SlotEvent& event);

// Ages of the AON nodes' updates at the start of a slot, and their mean.
class AgeState {
 public:
  explicit AgeState(Eigen::VectorXd ages);
  static AgeState Uniform(int n_aon, double age);

  const Eigen::VectorXd& ages() const { return ages_; }
  double network_age() const { return network_age_; }
  int size() const { return static_cast<int>(ages_.size()); }

  // Applies one realized slot in place.
  void Apply(const SlotEvent& event, const SlotLengths& slots);

 private:
  Eigen::VectorXd ages_;
  double network_age_ = 0.0;
};

SlotProbabilities SlotProbabilitiesCompetitive(const NetworkSizes& sizes,
                                               const AccessProfile& profile);

// The device hands the channel to the AON with probability p_r and to the
// TON otherwise; each branch is a single-network channel.
SlotProbabilities SlotProbabilitiesCooperative(const NetworkSizes& sizes,
                                               const AccessProfile& profile,
                                               double p_r);

// Conditional expected age of an AON node at the end of the slot given its
// age prior_age at the start. Only AON nodes carry an age.
double ExpectedNodeAge(const SlotProbabilities& probs, double prior_age,
                       const SlotLengths& slots, Network node_network = Network::Aon);

// Mean of ExpectedNodeAge over the AON; depends on the ages only via their mean.
double ExpectedNetworkAge(const SlotProbabilities& probs, double network_age,
                          const SlotLengths& slots);

double NetworkAge(const Eigen::Ref<const Eigen::VectorXd>& ages);

// Mean per-node TON throughput in bits over one slot.
double ExpectedNetworkThroughput(const SlotProbabilities& probs,
                                 const SlotLengths& slots, double rate);

// Draws one slot. Always consumes exactly n_aon + n_ton uniforms from rng
// (AON nodes first), including those of a network silenced by the mode, so
// trajectories that differ only in access decisions stay stream-aligned.
SlotEvent SampleSlot(Rng& rng, const NetworkSizes& sizes,
                     const AccessProfile& profile, SlotMode mode);

// Pure variant of AgeState::Apply.
AgeState ApplySlot(AgeState state, const SlotEvent& event,
                   const SlotLengths& slots);

}  // namespace coexist

#endif  // COEXIST_MODEL_HPP_

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

#include "coexist/model.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace coexist {
namespace {

void RequireProbability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << name << " must lie in [0,1], got " << p;
    throw InvalidArgument(msg.str());
  }
}

// (1 - tau)^n with exact values at the boundaries.
double Silent(double tau, int n) {
  if (n == 0 || tau == 0.0) return 1.0;
  if (tau == 1.0) return 0.0;
  return std::pow(1.0 - tau, n);
}

// tau (1 - tau)^(n-1): probability that one given node of an n-node
// network is its network's only transmitter.
double Lone(double tau, int n) {
  if (tau == 0.0) return 0.0;
  if (n == 1) return tau;
  if (tau == 1.0) return 0.0;
  return tau * std::pow(1.0 - tau, n - 1);
}

}  // namespace

void SlotLengths::Validate() const {
  if (!(idle > 0.0 && success > 0.0 && collision > 0.0)) {
    throw InvalidArgument("slot lengths must be strictly positive");
  }
  if (!(idle < success)) {
    throw InvalidArgument("idle slot must be shorter than a successful slot");
  }
}

void NetworkSizes::Validate() const {
  if (aon < 1 || ton < 1) {
    throw InvalidArgument("each network needs at least one node");
  }
}

void ScenarioParams::Validate() const {
  sizes.Validate();
  slots.Validate();
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("discount factor must lie in (0,1)");
  }
  RequireProbability(p_r, "p_r");
  if (!(rate > 0.0)) throw InvalidArgument("rate must be positive");
  if (!(initial_age >= 0.0)) {
    throw InvalidArgument("initial age must be non-negative");
  }
}

void AccessProfile::Validate() const {
  RequireProbability(tau_aon, "tau_aon");
  RequireProbability(tau_ton, "tau_ton");
}

double SlotProbabilities::MeanSlotLength(const SlotLengths& slots) const {
  return p_idle * slots.idle + p_success_total * slots.success +
         p_collision * slots.collision;
}

std::string ToString(const SlotEvent& event) {
  switch (event.kind) {
    case SlotEvent::Kind::Idle:
      return "Idle";
    case SlotEvent::Kind::Collision:
      return "Collision";
    case SlotEvent::Kind::SuccessAon:
      return "SuccessAon(" + std::to_string(event.node) + ")";
    case SlotEvent::Kind::SuccessTon:
      return "SuccessTon(" + std::to_string(event.node) + ")";
  }
  return "?";
}

AgeState::AgeState(Eigen::VectorXd ages) : ages_(std::move(ages)) {
  network_age_ = NetworkAge(ages_);
}

AgeState AgeState::Uniform(int n_aon, double age) {
  if (n_aon < 1) throw InvalidArgument("AgeState needs at least one node");
  return AgeState(Eigen::VectorXd::Constant(n_aon, age));
}

void AgeState::Apply(const SlotEvent& event, const SlotLengths& slots) {
  switch (event.kind) {
    case SlotEvent::Kind::Idle:
      ages_.array() += slots.idle;
      break;
    case SlotEvent::Kind::Collision:
      ages_.array() += slots.collision;
      break;
    case SlotEvent::Kind::SuccessTon:
      ages_.array() += slots.success;
      break;
    case SlotEvent::Kind::SuccessAon:
      if (event.node < 0 || event.node >= ages_.size()) {
        throw InvalidArgument("AON node index out of range");
      }
      // Peers see a busy slot; the transmitter's update is delivered fresh.
      ages_.array() += slots.success;
      ages_[event.node] = slots.success;
      break;
  }
  network_age_ = ages_.mean();
}

SlotProbabilities SlotProbabilitiesCompetitive(const NetworkSizes& sizes,
                                               const AccessProfile& profile) {
  sizes.Validate();
  profile.Validate();
  const int na = sizes.aon;
  const int nt = sizes.ton;
  const double silent_a = Silent(profile.tau_aon, na);
  const double silent_t = Silent(profile.tau_ton, nt);
  const double lone_a = Lone(profile.tau_aon, na);
  const double lone_t = Lone(profile.tau_ton, nt);

  SlotProbabilities p;
  p.p_idle = silent_a * silent_t;
  p.p_success_node_aon = lone_a * silent_t;
  p.p_success_node_ton = lone_t * silent_a;
  p.p_success_total = na * p.p_success_node_aon + nt * p.p_success_node_ton;
  p.p_busy_aon = (na - 1) * p.p_success_node_aon + nt * p.p_success_node_ton;
  p.p_busy_ton = (nt - 1) * p.p_success_node_ton + na * p.p_success_node_aon;
  p.p_collision = 1.0 - p.p_success_total - p.p_idle;
  return p;
}

SlotProbabilities SlotProbabilitiesCooperative(const NetworkSizes& sizes,
                                               const AccessProfile& profile,
                                               double p_r) {
  sizes.Validate();
  profile.Validate();
  RequireProbability(p_r, "p_r");
  const int na = sizes.aon;
  const int nt = sizes.ton;
  const double q = 1.0 - p_r;
  const double lone_a = Lone(profile.tau_aon, na);
  const double lone_t = Lone(profile.tau_ton, nt);

  SlotProbabilities p;
  p.p_idle = p_r * Silent(profile.tau_aon, na) + q * Silent(profile.tau_ton, nt);
  p.p_success_node_aon = p_r * lone_a;
  p.p_success_node_ton = q * lone_t;
  p.p_success_total = na * p.p_success_node_aon + nt * p.p_success_node_ton;
  p.p_busy_aon = nt * p.p_success_node_ton + (na - 1) * p.p_success_node_aon;
  p.p_busy_ton = (nt - 1) * p.p_success_node_ton + na * p.p_success_node_aon;
  p.p_collision = 1.0 - p.p_success_total - p.p_idle;
  return p;
}

double ExpectedNodeAge(const SlotProbabilities& probs, double prior_age,
                       const SlotLengths& slots, Network node_network) {
  if (node_network != Network::Aon) {
    throw InvalidArgument("age is defined only for AON nodes");
  }
  if (!(prior_age >= 0.0)) throw InvalidArgument("prior age must be >= 0");
  return (1.0 - probs.p_success_node_aon) * prior_age +
         probs.MeanSlotLength(slots);
}

double ExpectedNetworkAge(const SlotProbabilities& probs, double network_age,
                          const SlotLengths& slots) {
  return ExpectedNodeAge(probs, network_age, slots, Network::Aon);
}

double NetworkAge(const Eigen::Ref<const Eigen::VectorXd>& ages) {
  if (ages.size() == 0) throw InvalidArgument("network age of an empty AON");
  return ages.mean();
}

double ExpectedNetworkThroughput(const SlotProbabilities& probs,
                                 const SlotLengths& slots, double rate) {
  return probs.p_success_node_ton * slots.success * rate;
}

SlotEvent SampleSlot(Rng& rng, const NetworkSizes& sizes,
                     const AccessProfile& profile, SlotMode mode) {
  const bool aon_may = !mode.recommendation ||
                       *mode.recommendation == Recommendation::Heads;
  const bool ton_may = !mode.recommendation ||
                       *mode.recommendation == Recommendation::Tails;
  int transmitters = 0;
  SlotEvent last = SlotEvent::Idle();
  for (int i = 0; i < sizes.aon; ++i) {
    if (rng.Uniform() < profile.tau_aon && aon_may) {
      ++transmitters;
      last = SlotEvent::SuccessAon(i);
    }
  }
  for (int i = 0; i < sizes.ton; ++i) {
    if (rng.Uniform() < profile.tau_ton && ton_may) {
      ++transmitters;
      last = SlotEvent::SuccessTon(i);
    }
  }
  if (transmitters == 0) return SlotEvent::Idle();
  if (transmitters == 1) return last;
  return SlotEvent::Collision();
}

AgeState ApplySlot(AgeState state, const SlotEvent& event,
                   const SlotLengths& slots) {
  state.Apply(event, slots);
  return state;
}

}  // namespace coexist

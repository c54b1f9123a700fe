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

#include "coexist/etiquette.hpp"

#include <cmath>

#include "coexist/equilibrium.hpp"

namespace coexist {
namespace {

ActionProfile ProfileOf(const StageOneCase& c) {
  if (const auto* obey = std::get_if<Obey>(&c)) return Recommended(obey->recommendation);
  return PlayedProfile(std::get<DeviationCase>(c));
}

constexpr int kObeyHeads = 0;
constexpr int kObeyTails = 1;
constexpr int kBothBackOff = 2;
constexpr int kBothAccess = 3;

}  // namespace

ActionProfile Recommended(Recommendation rec) {
  return rec == Recommendation::Heads ? ActionProfile{true, false}
                                      : ActionProfile{false, true};
}

bool Complies(Recommendation rec, const ActionProfile& played) {
  return played == Recommended(rec);
}

Recommendation RecommendationOf(DeviationCase c) {
  return c == DeviationCase::HeadsTonDeviates || c == DeviationCase::HeadsAonDeviates
             ? Recommendation::Heads
             : Recommendation::Tails;
}

Network DeviatorOf(DeviationCase c) {
  return c == DeviationCase::HeadsTonDeviates || c == DeviationCase::TailsTonDeviates
             ? Network::Ton
             : Network::Aon;
}

ActionProfile PlayedProfile(DeviationCase c) {
  ActionProfile p = Recommended(RecommendationOf(c));
  if (DeviatorOf(c) == Network::Aon) {
    p.aon_access = !p.aon_access;
  } else {
    p.ton_access = !p.ton_access;
  }
  return p;
}

double ExpectedNextNetworkAge(const StageOneCase& c, const NetworkSizes& sizes,
                              const SlotLengths& slots,
                              const AccessProfile& profile_hat,
                              double network_age) {
  sizes.Validate();
  profile_hat.Validate();
  const int na = sizes.aon;
  const int nt = sizes.ton;
  const double ta = profile_hat.tau_aon;
  const double tt = profile_hat.tau_ton;
  const double di = slots.idle - slots.collision;
  const double ds = slots.success - slots.collision;
  const double lone_a = ta * std::pow(1.0 - ta, na - 1);
  const double lone_t = tt * std::pow(1.0 - tt, nt - 1);
  const double silent_a = std::pow(1.0 - ta, na);
  const double silent_t = std::pow(1.0 - tt, nt);

  const ActionProfile played = ProfileOf(c);
  if (played.aon_access && played.ton_access) {
    return network_age * (1.0 - lone_a * silent_t) + slots.collision +
           silent_t * silent_a * di +
           (na * lone_a * silent_t + nt * lone_t * silent_a) * ds;
  }
  if (played.aon_access) {
    return network_age * (1.0 - lone_a) + slots.collision + silent_a * di +
           na * lone_a * ds;
  }
  if (played.ton_access) {
    return network_age + slots.collision + silent_t * di + nt * lone_t * ds;
  }
  return network_age + slots.idle;
}

double ExpectedStageOneThroughput(const StageOneCase& c, const NetworkSizes& sizes,
                                  const SlotLengths& slots,
                                  const AccessProfile& profile_hat, double rate) {
  sizes.Validate();
  profile_hat.Validate();
  const ActionProfile played = ProfileOf(c);
  if (!played.ton_access) return 0.0;
  const double tt = profile_hat.tau_ton;
  double p = tt * std::pow(1.0 - tt, sizes.ton - 1);
  if (played.aon_access) p *= std::pow(1.0 - profile_hat.tau_aon, sizes.aon);
  return p * slots.success * rate;
}

EtiquetteOutcome PlayEtiquette(const EtiquetteConfig& config, EtiquetteTrace* trace) {
  const ScenarioParams& p = config.params;
  p.Validate();
  if (config.n_stages < 1) throw InvalidArgument("a run needs at least one stage");
  if (config.deviation && config.deviation->stage < 1) {
    throw InvalidArgument("deviation stage is 1-based");
  }

  Rng rng(config.seed);
  AgeState ages = AgeState::Uniform(p.sizes.aon, p.initial_age);
  bool competing = false;
  double weight = 1.0;  // alpha^(n-1)
  EtiquetteOutcome out;
  if (trace) {
    trace->clear();
    trace->reserve(config.n_stages);
  }

  for (int n = 1; n <= config.n_stages; ++n) {
    Recommendation rec =
        rng.Uniform() < p.p_r ? Recommendation::Heads : Recommendation::Tails;
    if (n == 1 && config.first_recommendation) rec = *config.first_recommendation;
    const double age_before = ages.network_age();

    AccessProfile profile;
    ActionProfile played{true, true};
    bool obeyed = false;
    const bool competing_now = competing;
    if (competing) {
      profile = Msne(p.sizes, p.slots, age_before).profile;
    } else {
      played = Recommended(rec);
      if (config.deviation && config.deviation->stage == n) {
        if (config.deviation->deviator == Network::Aon) {
          played.aon_access = !played.aon_access;
        } else {
          played.ton_access = !played.ton_access;
        }
      }
      const AccessProfile hat = CooperativeOptimum(p.sizes, p.slots, age_before).profile;
      profile.tau_aon = played.aon_access ? hat.tau_aon : 0.0;
      profile.tau_ton = played.ton_access ? hat.tau_ton : 0.0;
      obeyed = Complies(rec, played);
      if (!obeyed) competing = true;
    }

    const SlotEvent event = SampleSlot(rng, p.sizes, profile, SlotMode::Competitive());
    ages.Apply(event, p.slots);
    const double u_aon = -ages.network_age();
    const double u_ton = event.kind == SlotEvent::Kind::SuccessTon
                             ? p.slots.success * p.rate / p.sizes.ton
                             : 0.0;
    if (n == 1) {
      out.stage_one_aon = u_aon;
      out.stage_one_ton = u_ton;
    } else {
      out.continuation_aon += weight * u_aon;
      out.continuation_ton += weight * u_ton;
    }
    weight *= p.alpha;
    if (competing_now && out.trigger_stage == 0) out.trigger_stage = n;

    if (trace) {
      EtiquetteRecord r;
      r.stage = {n, age_before, rec, profile, SlotMode::Competitive(), event, u_aon, u_ton};
      r.played = played;
      r.competing = competing_now;
      r.obeyed = obeyed;
      trace->push_back(r);
    }
  }

  out.u_aon_discounted = (1.0 - p.alpha) * (out.stage_one_aon + out.continuation_aon);
  out.u_ton_discounted = (1.0 - p.alpha) * (out.stage_one_ton + out.continuation_ton);
  return out;
}

bool DeviationReport::Decided(int i) const {
  const Estimate& m = margins[i];
  if (m.se == 0.0) return true;
  return std::abs(m.mean) > 2.0 * m.se;
}

std::string ToString(Feasibility f) {
  switch (f) {
    case Feasibility::Feasible:
      return "feasible";
    case Feasibility::Infeasible:
      return "infeasible";
    case Feasibility::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

DeviationReport DeviationInequalities(const ScenarioParams& params, int n_runs,
                                      int n_stages, std::uint64_t seed,
                                      int threads) {
  params.Validate();
  if (n_runs < 1) throw InvalidArgument("n_runs must be >= 1");
  const double alpha = params.alpha;
  const AccessProfile hat =
      CooperativeOptimum(params.sizes, params.slots, params.initial_age).profile;

  auto age_term = [&](const StageOneCase& c) {
    return -ExpectedNextNetworkAge(c, params.sizes, params.slots, hat,
                                   params.initial_age);
  };
  auto thr_term = [&](const StageOneCase& c) {
    return ExpectedStageOneThroughput(c, params.sizes, params.slots, hat, params.rate);
  };
  const double s1_gap[4] = {
      age_term(Obey{Recommendation::Heads}) - age_term(DeviationCase::HeadsAonDeviates),
      thr_term(Obey{Recommendation::Heads}) - thr_term(DeviationCase::HeadsTonDeviates),
      age_term(Obey{Recommendation::Tails}) - age_term(DeviationCase::TailsAonDeviates),
      thr_term(Obey{Recommendation::Tails}) - thr_term(DeviationCase::TailsTonDeviates),
  };

  std::array<std::vector<double>, 4> margin;
  std::array<std::vector<double>, 4> s1_aon;
  std::array<std::vector<double>, 4> s1_ton;
  for (int i = 0; i < 4; ++i) {
    margin[i].resize(n_runs);
    s1_aon[i].resize(n_runs);
    s1_ton[i].resize(n_runs);
  }

  ParallelFor(n_runs, threads, [&](int k) {
    EtiquetteConfig base{params, n_stages,
                         DeriveSeed(seed, {static_cast<std::uint64_t>(k)}),
                         Recommendation::Heads, std::nullopt};
    std::array<EtiquetteOutcome, 4> o;
    o[kObeyHeads] = PlayEtiquette(base);
    EtiquetteConfig tails = base;
    tails.first_recommendation = Recommendation::Tails;
    o[kObeyTails] = PlayEtiquette(tails);
    EtiquetteConfig back_off = base;
    back_off.deviation = Deviation{1, Network::Aon};  // Heads, AON backs off
    o[kBothBackOff] = PlayEtiquette(back_off);
    EtiquetteConfig access = base;
    access.deviation = Deviation{1, Network::Ton};  // Heads, TON accesses
    o[kBothAccess] = PlayEtiquette(access);

    const auto& obey_h = o[kObeyHeads];
    const auto& obey_t = o[kObeyTails];
    const auto& bb = o[kBothBackOff];
    const auto& aa = o[kBothAccess];
    margin[0][k] = (1.0 - alpha) * (s1_gap[0] + obey_h.continuation_aon - bb.continuation_aon);
    margin[1][k] = (1.0 - alpha) * (s1_gap[1] + obey_h.continuation_ton - aa.continuation_ton);
    margin[2][k] = (1.0 - alpha) * (s1_gap[2] + obey_t.continuation_aon - aa.continuation_aon);
    margin[3][k] = (1.0 - alpha) * (s1_gap[3] + obey_t.continuation_ton - bb.continuation_ton);
    for (int b = 0; b < 4; ++b) {
      s1_aon[b][k] = o[b].stage_one_aon;
      s1_ton[b][k] = o[b].stage_one_ton;
    }
  });

  DeviationReport report;
  for (int i = 0; i < 4; ++i) {
    report.margins[i] = Summarize(margin[i]);
    report.stage_one_aon[i] = Summarize(s1_aon[i]);
    report.stage_one_ton[i] = Summarize(s1_ton[i]);
  }
  return report;
}

Feasibility Classify(const DeviationReport& report) {
  bool all_resolved = true;
  for (int i = 0; i < 4; ++i) {
    if (report.Decided(i) && !report.Holds(i)) return Feasibility::Infeasible;
    if (!report.Decided(i)) all_resolved = false;
  }
  return all_resolved ? Feasibility::Feasible : Feasibility::Indeterminate;
}

Feasibility SpeFeasible(const ScenarioParams& params, int n_runs, int n_stages,
                        std::uint64_t seed, int threads) {
  return Classify(DeviationInequalities(params, n_runs, n_stages, seed, threads));
}

RegionGrid RegionSweep(const ScenarioParams& params,
                       const std::vector<double>& alpha_grid,
                       const std::vector<double>& pr_grid, int n_runs,
                       int n_stages, std::uint64_t seed, int threads) {
  for (double a : alpha_grid) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("alpha grid must lie in (0,1)");
  }
  for (double pr : pr_grid) {
    if (!(pr > 0.0 && pr < 1.0)) throw InvalidArgument("P_R grid must lie in (0,1)");
  }
  const int rows = static_cast<int>(alpha_grid.size());
  const int cols = static_cast<int>(pr_grid.size());

  RegionGrid g;
  g.alpha_axis = alpha_grid;
  g.pr_axis = pr_grid;
  g.ton_prefers = RegionGrid::BoolGrid::Constant(rows, cols, false);
  g.aon_prefers = g.ton_prefers;
  g.spe = g.ton_prefers;
  g.indeterminate = g.ton_prefers;
  for (int i = 0; i < 4; ++i) {
    g.margin[i] = Eigen::ArrayXXd::Zero(rows, cols);
    g.margin_se[i] = Eigen::ArrayXXd::Zero(rows, cols);
  }
  Eigen::Array<Feasibility, Eigen::Dynamic, Eigen::Dynamic> verdict(rows, cols);

  ParallelFor(rows * cols, threads, [&](int cell) {
    const int i = cell / cols;
    const int j = cell % cols;
    ScenarioParams p = params;
    p.alpha = alpha_grid[i];
    p.p_r = pr_grid[j];
    const DeviationReport r = DeviationInequalities(
        p, n_runs, n_stages,
        DeriveSeed(seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)}));
    g.ton_prefers(i, j) = r.TonPrefers();
    g.aon_prefers(i, j) = r.AonPrefers();
    verdict(i, j) = Classify(r);
    g.indeterminate(i, j) = verdict(i, j) == Feasibility::Indeterminate;
    for (int k = 0; k < 4; ++k) {
      g.margin[k](i, j) = r.margins[k].mean;
      g.margin_se[k](i, j) = r.margins[k].se;
    }
  });
  g.spe = g.ton_prefers && g.aon_prefers;

  for (int j = 0; j < cols; ++j) {
    for (int lo = 0; lo < rows; ++lo) {
      if (verdict(lo, j) != Feasibility::Feasible) continue;
      for (int hi = lo + 1; hi < rows; ++hi) {
        if (alpha_grid[hi] > alpha_grid[lo] && verdict(hi, j) == Feasibility::Infeasible) {
          g.monotonicity_flags.push_back({{lo, j}, {hi, j}});
        }
      }
    }
  }
  return g;
}

}  // namespace coexist

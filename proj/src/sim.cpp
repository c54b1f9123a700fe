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

#include "coexist/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace coexist {
namespace {

double PairwiseSum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return PairwiseSum(v.first(half)) + PairwiseSum(v.subspan(half));
}

double RealizedThroughput(const SlotEvent& event, const ScenarioParams& p) {
  return event.kind == SlotEvent::Kind::SuccessTon
             ? p.slots.success * p.rate / p.sizes.ton
             : 0.0;
}

struct StageChoice {
  AccessProfile profile;
  SlotMode mode;
  bool counts = false;
};

// Shared stage loop. choose(rec, age) returns the access profile and the
// slot mode of the stage and whether it counts toward the tau frequencies.
template <typename Choose>
RunResult PlayStages(const RunConfig& config, StageTrace* trace, Choose&& choose) {
  config.Validate();
  const ScenarioParams& p = config.params;
  Rng rng(config.seed);
  AgeState ages = AgeState::Uniform(p.sizes.aon, p.initial_age);

  double weight = 1.0 - p.alpha;
  double u_aon_total = 0.0;
  double u_ton_total = 0.0;
  int counted = 0;
  int ones = 0;
  int zeros = 0;
  if (trace) {
    trace->clear();
    trace->reserve(config.n_stages);
  }

  for (int n = 1; n <= config.n_stages; ++n) {
    const Recommendation rec =
        rng.Uniform() < p.p_r ? Recommendation::Heads : Recommendation::Tails;
    const double age_before = ages.network_age();
    const auto [profile, slot_mode, counts] = choose(rec, age_before);
    if (counts) {
      ++counted;
      ones += profile.tau_aon == 1.0;
      zeros += profile.tau_aon == 0.0;
    }
    const SlotEvent event = SampleSlot(rng, p.sizes, profile, slot_mode);
    ages.Apply(event, p.slots);

    double u_aon = -ages.network_age();
    double u_ton = RealizedThroughput(event, p);
    if (config.accumulate_expected) {
      const StagePayoffs e = ExpectedStagePayoffs(
          Competitive{}, p.sizes, p.slots, profile, age_before, p.rate);
      u_aon = e.u_aon;
      u_ton = e.u_ton;
    }
    u_aon_total += weight * u_aon;
    u_ton_total += weight * u_ton;
    weight *= p.alpha;

    if (trace) {
      trace->push_back({n, age_before, rec, profile, slot_mode, event, u_aon, u_ton});
    }
  }

  RunResult r;
  r.u_aon_discounted = u_aon_total;
  r.u_ton_discounted = u_ton_total;
  if (counted > 0) {
    r.freq_tau_one = static_cast<double>(ones) / counted;
    r.freq_tau_zero = static_cast<double>(zeros) / counted;
  }
  r.final_ages = std::move(ages);
  return r;
}

}  // namespace

std::string ToString(Mode mode) {
  return mode == Mode::Competitive ? "competitive" : "cooperative";
}

void RunConfig::Validate() const {
  params.Validate();
  if (n_stages < 1) throw InvalidArgument("a run needs at least one stage");
}

RunResult RunCompetition(const RunConfig& config, StageTrace* trace) {
  if (config.mode != Mode::Competitive) {
    throw InvalidArgument("RunCompetition needs a competitive config");
  }
  const ScenarioParams& p = config.params;
  return PlayStages(config, trace, [&](Recommendation, double age) {
    return StageChoice{Msne(p.sizes, p.slots, age).profile,
                       SlotMode::Competitive(), true};
  });
}

RunResult RunCooperation(const RunConfig& config, StageTrace* trace) {
  if (config.mode != Mode::Cooperative) {
    throw InvalidArgument("RunCooperation needs a cooperative config");
  }
  const ScenarioParams& p = config.params;
  const double tau_ton = 1.0 / p.sizes.ton;
  return PlayStages(config, trace, [&](Recommendation rec, double age) {
    if (rec == Recommendation::Heads) {
      const double tau_aon = CooperativeOptimum(p.sizes, p.slots, age).profile.tau_aon;
      return StageChoice{{tau_aon, 0.0}, SlotMode::Cooperative(rec), true};
    }
    return StageChoice{{0.0, tau_ton}, SlotMode::Cooperative(rec), false};
  });
}

RunResult Run(const RunConfig& config, StageTrace* trace) {
  return config.mode == Mode::Competitive ? RunCompetition(config, trace)
                                          : RunCooperation(config, trace);
}

Estimate Summarize(std::span<const double> values) {
  Estimate e;
  const std::size_t n = values.size();
  if (n == 0) return e;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) {
    e.mean = *lo;
    return e;
  }
  e.mean = PairwiseSum(values) / static_cast<double>(n);
  if (n == 1) return e;
  std::vector<double> sq(n);
  std::transform(values.begin(), values.end(), sq.begin(), [&](double x) {
    const double d = x - e.mean;
    return d * d;
  });
  const double var = PairwiseSum(sq) / static_cast<double>(n - 1);
  e.se = std::sqrt(var / static_cast<double>(n));
  return e;
}

void ParallelFor(int n, int threads, const std::function<void(int)>& task) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int workers = std::min(threads, n);
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

Aggregate MonteCarlo(const RunConfig& config, int n_runs, int threads) {
  if (n_runs < 1) throw InvalidArgument("n_runs must be >= 1");
  config.Validate();
  std::vector<double> ua(n_runs), ut(n_runs), f1(n_runs), f0(n_runs);
  ParallelFor(n_runs, threads, [&](int k) {
    RunConfig c = config;
    c.seed = DeriveSeed(config.seed, {static_cast<std::uint64_t>(k)});
    const RunResult r = Run(c);
    ua[k] = r.u_aon_discounted;
    ut[k] = r.u_ton_discounted;
    f1[k] = r.freq_tau_one;
    f0[k] = r.freq_tau_zero;
  });
  Aggregate a;
  a.n_runs = n_runs;
  a.u_aon = Summarize(ua);
  a.u_ton = Summarize(ut);
  a.freq_tau_one = Summarize(f1);
  a.freq_tau_zero = Summarize(f0);
  return a;
}

Gain GainOfCooperation(const ScenarioParams& params, int n_runs, int n_stages,
                       std::uint64_t seed, int threads, bool self_test) {
  if (n_runs < 1) throw InvalidArgument("n_runs must be >= 1");
  RunConfig coop{params, n_stages, self_test ? Mode::Competitive : Mode::Cooperative,
                 seed};
  RunConfig compete{params, n_stages, Mode::Competitive, seed};
  coop.Validate();
  std::vector<double> da(n_runs), dt(n_runs);
  ParallelFor(n_runs, threads, [&](int k) {
    const std::uint64_t s = DeriveSeed(seed, {static_cast<std::uint64_t>(k)});
    RunConfig c = coop;
    RunConfig nc = compete;
    c.seed = s;
    nc.seed = s;
    const RunResult rc = Run(c);
    const RunResult rn = Run(nc);
    da[k] = rc.u_aon_discounted - rn.u_aon_discounted;
    dt[k] = rc.u_ton_discounted - rn.u_ton_discounted;
  });
  return {Summarize(da), Summarize(dt)};
}

}  // namespace coexist

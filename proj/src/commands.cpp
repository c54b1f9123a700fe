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


#include "coexist/commands.hpp"

#include <sstream>

#include "coexist/equilibrium.hpp"
#include "coexist/etiquette.hpp"
#include "coexist/sim.hpp"

namespace coexist {
namespace {

// Comma-joined CSV row builder.
class Row {
 public:
  Row& operator<<(double v) { return Put(FormatDouble(v)); }
  Row& operator<<(int v) { return Put(std::to_string(v)); }
  Row& operator<<(std::uint64_t v) { return Put(std::to_string(v)); }
  Row& operator<<(bool v) { return Put(v ? "1" : "0"); }
  Row& operator<<(const std::string& v) { return Put(v); }
  Row& operator<<(const char* v) { return Put(v); }
  Row& operator<<(const Estimate& e) { return *this << e.mean << e.se; }

  std::string str() const { return text_ + "\n"; }

 private:
  Row& Put(const std::string& s) {
    if (!text_.empty()) text_ += ",";
    text_ += s;
    return *this;
  }
  std::string text_;
};

double Ratio(const SlotLengths& s) { return s.collision / s.success; }

std::vector<double> OrDefault(const std::vector<double>& grid, double fallback) {
  return grid.empty() ? std::vector<double>{fallback} : grid;
}

}  // namespace

std::vector<double> DefaultRegionAxis() {
  std::vector<double> axis;
  for (int k = 0; k < 10; ++k) axis.push_back(0.05 + 0.1 * k);
  return axis;
}

std::string CmdMsne(const ExperimentConfig& c) {
  const ScenarioParams& p = c.scenario;
  std::ostringstream out;
  out << "N_A,N_T,sigma_C_ratio,network_age,tau_aon,tau_ton,th0,th1,regime\n";
  for (double age : OrDefault(c.ages, p.slots.success)) {
    const StageSolution s = Msne(p.sizes, p.slots, age);
    out << (Row() << p.sizes.aon << p.sizes.ton << Ratio(p.slots) << age
                  << s.profile.tau_aon << s.profile.tau_ton << s.thresholds.th0
                  << s.thresholds.th1 << ToString(s.thresholds.regime))
               .str();
  }
  return out.str();
}

std::string CmdStage(const ExperimentConfig& c) {
  const ScenarioParams& p = c.scenario;
  std::ostringstream out;
  out << "N_A,N_T,sigma_C_ratio,p_r,network_age,profile,tau_aon,tau_ton,"
         "p_idle,p_success,p_collision,U_aon,U_ton\n";
  for (double age : OrDefault(c.ages, p.slots.success)) {
    const AccessProfile ne = Msne(p.sizes, p.slots, age).profile;
    const AccessProfile hat = CooperativeOptimum(p.sizes, p.slots, age).profile;
    const double tau_t = 1.0 / p.sizes.ton;
    struct Case {
      const char* name;
      StageMode mode;
      AccessProfile profile;
    };
    const Case cases[] = {
        {"msne", Competitive{}, ne},
        {"cooperative", Cooperative{p.p_r}, hat},
        {"aon_silent", Competitive{}, {0.0, tau_t}},
        {"aon_always", Competitive{}, {1.0, tau_t}},
    };
    for (const Case& k : cases) {
      const SlotProbabilities probs =
          std::holds_alternative<Competitive>(k.mode)
              ? SlotProbabilitiesCompetitive(p.sizes, k.profile)
              : SlotProbabilitiesCooperative(p.sizes, k.profile, p.p_r);
      const StagePayoffs u =
          ExpectedStagePayoffs(k.mode, p.sizes, p.slots, k.profile, age, p.rate);
      out << (Row() << p.sizes.aon << p.sizes.ton << Ratio(p.slots) << p.p_r << age
                    << k.name << k.profile.tau_aon << k.profile.tau_ton << probs.p_idle
                    << probs.p_success_total << probs.p_collision << u.u_aon << u.u_ton)
                 .str();
    }
  }
  return out.str();
}

std::string SimulateHeader() {
  return "mode,N_A,N_T,sigma_C_ratio,alpha,p_r,n_runs,n_stages,seed,U_aon_mean,"
         "U_aon_se,U_ton_mean,U_ton_se,f_tau1_mean,f_tau0_mean\n";
}

std::string CmdSimulate(const ExperimentConfig& c) {
  std::ostringstream out;
  out << SimulateHeader();
  for (double alpha : OrDefault(c.alpha_grid, c.scenario.alpha)) {
    for (double pr : OrDefault(c.pr_grid, c.scenario.p_r)) {
      RunConfig run{c.scenario, c.n_stages, c.mode, c.master_seed, c.accumulate_expected};
      run.params.alpha = alpha;
      run.params.p_r = pr;
      const Aggregate a = MonteCarlo(run, c.n_runs, c.threads);
      const auto& s = run.params;
      out << (Row() << ToString(c.mode) << s.sizes.aon << s.sizes.ton << Ratio(s.slots)
                    << alpha << pr << c.n_runs << c.n_stages << c.master_seed << a.u_aon
                    << a.u_ton << a.freq_tau_one.mean << a.freq_tau_zero.mean)
                 .str();
    }
  }
  return out.str();
}

std::string CmdRegion(const ExperimentConfig& c) {
  const std::vector<double> alphas = c.alpha_grid.empty() ? DefaultRegionAxis() : c.alpha_grid;
  const std::vector<double> prs = c.pr_grid.empty() ? DefaultRegionAxis() : c.pr_grid;
  const RegionGrid g =
      RegionSweep(c.scenario, alphas, prs, c.n_runs, c.n_stages, c.master_seed, c.threads);
  const ScenarioParams& p = c.scenario;
  std::ostringstream out;
  out << "N_A,N_T,sigma_C_ratio,alpha,p_r,n_runs,n_stages,seed,ton_prefers,aon_prefers,"
         "spe,indeterminate,margin_0,se_0,margin_1,se_1,margin_2,se_2,margin_3,se_3\n";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = 0; j < prs.size(); ++j) {
      Row r;
      r << p.sizes.aon << p.sizes.ton << Ratio(p.slots) << alphas[i] << prs[j] << c.n_runs
        << c.n_stages << c.master_seed << g.ton_prefers(i, j) << g.aon_prefers(i, j)
        << g.spe(i, j) << g.indeterminate(i, j);
      for (int k = 0; k < 4; ++k) r << g.margin[k](i, j) << g.margin_se[k](i, j);
      out << r.str();
    }
  }
  return out.str();
}

std::string CmdGain(const ExperimentConfig& c, bool self_test) {
  const ScenarioParams& p = c.scenario;
  std::ostringstream out;
  out << "N_A,N_T,sigma_C_ratio,alpha,p_r,n_runs,n_stages,seed,gain_aon_mean,"
         "gain_aon_se,gain_ton_mean,gain_ton_se\n";
  for (double alpha : OrDefault(c.alpha_grid, p.alpha)) {
    for (double pr : OrDefault(c.pr_grid, p.p_r)) {
      ScenarioParams s = p;
      s.alpha = alpha;
      s.p_r = pr;
      const Gain g =
          GainOfCooperation(s, c.n_runs, c.n_stages, c.master_seed, c.threads, self_test);
      out << (Row() << p.sizes.aon << p.sizes.ton << Ratio(p.slots) << alpha << pr
                    << c.n_runs << c.n_stages << c.master_seed << g.aon << g.ton)
                 .str();
    }
  }
  return out.str();
}

std::string CmdFreq(const ExperimentConfig& c) {
  const std::vector<int> aon = c.aon_sizes.empty() ? std::vector<int>{1, 2, 5, 10} : c.aon_sizes;
  std::ostringstream out;
  out << "N_A,N_T,sigma_C_ratio,n_runs,n_stages,seed,f_tau1_mean,f_tau1_se,f_tau0_mean,"
         "f_tau0_se\n";
  for (int na : aon) {
    const std::vector<int> ton = c.ton_sizes.empty() ? std::vector<int>{na} : c.ton_sizes;
    for (int nt : ton) {
      RunConfig run{c.scenario, c.n_stages, Mode::Competitive, c.master_seed};
      run.params.sizes = {na, nt};
      const Aggregate a = MonteCarlo(run, c.n_runs, c.threads);
      out << (Row() << na << nt << Ratio(c.scenario.slots) << c.n_runs << c.n_stages
                    << c.master_seed << a.freq_tau_one << a.freq_tau_zero)
                 .str();
    }
  }
  return out.str();
}

}  // namespace coexist

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


#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "coexist/commands.hpp"
#include "coexist/config.hpp"
#include "coexist/equilibrium.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<int> stages;
  std::optional<int> threads;
  std::optional<std::string> mode;
  bool paper_scale = false;
  bool self_test = false;
  bool echo_config = false;
  std::string out_path;
};

coexist::ExperimentConfig Resolve(const Flags& f) {
  coexist::ExperimentConfig c =
      f.config_path.empty() ? coexist::ExperimentConfig() : coexist::LoadConfig(f.config_path);
  if (f.paper_scale) {
    c.n_runs = coexist::kPaperRuns;
    c.n_stages = coexist::kPaperStages;
  }
  if (f.seed) c.master_seed = *f.seed;
  if (f.runs) c.n_runs = *f.runs;
  if (f.stages) c.n_stages = *f.stages;
  if (f.threads) c.threads = *f.threads;
  if (f.mode) {
    c.mode = *f.mode == "cooperative" ? coexist::Mode::Cooperative : coexist::Mode::Competitive;
  }
  c.Finalize();
  return c;
}

void Emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw IoError("cannot write to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("write to " + path + " failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age and throughput network coexistence experiments"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "Experiment config file")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "Master seed");
    sub->add_option("--runs", flags.runs, "Monte Carlo runs")->check(CLI::PositiveNumber);
    sub->add_option("--stages", flags.stages, "Stages per run")->check(CLI::PositiveNumber);
    sub->add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--paper-scale", flags.paper_scale, "Use 100000 runs x 1000 stages");
    sub->add_option("--out", flags.out_path, "Output CSV path (default stdout)");
    sub->add_flag("--echo-config", flags.echo_config,
                  "Print the resolved config and exit");
  };

  std::string chosen;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s);
    s->callback([&chosen, name] { chosen = name; });
    return s;
  };
  sub("msne", "Competitive equilibrium and thresholds per network age");
  sub("stage", "Expected stage payoffs per network age");
  CLI::App* simulate = sub("simulate", "Monte Carlo discounted payoffs");
  simulate->add_option("--mode", flags.mode, "competitive or cooperative")
      ->check(CLI::IsMember({"competitive", "cooperative"}));
  sub("region", "Deviation inequalities over the (alpha, P_R) grid");
  CLI::App* gain = sub("gain", "Gain of cooperation over competition");
  gain->add_flag("--self-test", flags.self_test, "Compare competition against itself");
  sub("freq", "Competitive tau_A frequencies per network size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const coexist::ExperimentConfig config = Resolve(flags);
    if (flags.echo_config) {
      Emit(coexist::ToText(config), flags.out_path);
      return 0;
    }
    std::string csv;
    if (chosen == "msne") {
      csv = coexist::CmdMsne(config);
    } else if (chosen == "stage") {
      csv = coexist::CmdStage(config);
    } else if (chosen == "simulate") {
      csv = coexist::CmdSimulate(config);
    } else if (chosen == "region") {
      csv = coexist::CmdRegion(config);
    } else if (chosen == "gain") {
      csv = coexist::CmdGain(config, flags.self_test);
    } else {
      csv = coexist::CmdFreq(config);
    }
    Emit(csv, flags.out_path);
  } catch (const coexist::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const coexist::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitConfig;
  } catch (const coexist::OutOfRange& e) {
    std::cerr << "numeric regime error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}

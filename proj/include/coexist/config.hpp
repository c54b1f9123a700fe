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

#ifndef COEXIST_CONFIG_HPP_
#define COEXIST_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coexist/model.hpp"
#include "coexist/sim.hpp"

// Experiment configuration.
//
// Flat text, one `key = value` per line, grouped under [scenario], [run] and
// [grid]. `#` starts a comment. Lists are comma separated. Unknown keys and
// sections are errors. Example:
//
//   [scenario]
//   n_aon = 5
//   n_ton = 5
//   slot_scenario = small_collision   # equal_slots | large_collision | explicit
//   beta = 0.01
//   alpha = 0.9
//   p_r = 0.5
//
//   [run]
//   mode = competitive
//   runs = 2000
//   stages = 300
//   seed = 1
//
//   [grid]
//   alpha = 0.05, 0.15, 0.25
//   p_r = 0.5
//
// Unless slot_scenario is explicit, sigma_I = beta, sigma_S = 1 + beta and
// sigma_C is 0.1, 1 or 2 times sigma_S. initial_age defaults to sigma_S.
namespace coexist {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0, std::string field = {});

  int line() const { return line_; }            // 0 when not tied to a line
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

enum class SlotScenario { SmallCollision, EqualSlots, LargeCollision, Explicit };

std::string ToString(SlotScenario s);
SlotScenario ParseSlotScenario(std::string_view text);

// sigma_C / sigma_S for the three named scenarios.
double CollisionRatio(SlotScenario s);
SlotLengths ExpandSlots(SlotScenario s, double beta);

inline constexpr int kDeskRuns = 2000;
inline constexpr int kDeskStages = 300;
inline constexpr int kPaperRuns = 100000;
inline constexpr int kPaperStages = 1000;

struct ExperimentConfig {
  ScenarioParams scenario;
  SlotScenario slot_scenario = SlotScenario::SmallCollision;
  double beta = 0.01;

  Mode mode = Mode::Competitive;
  int n_runs = kDeskRuns;
  int n_stages = kDeskStages;
  std::uint64_t master_seed = 1;
  int threads = 1;
  bool accumulate_expected = false;

  // Sweep axes. Empty alpha / p_r lists fall back to the scenario value.
  std::vector<double> ages;
  std::vector<double> alpha_grid;
  std::vector<double> pr_grid;
  std::vector<int> aon_sizes;
  std::vector<int> ton_sizes;

  ExperimentConfig();

  // Re-derives the slot lengths from slot_scenario and beta (no-op for
  // explicit) and validates everything.
  void Finalize();

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&);
};

ExperimentConfig ParseConfig(std::string_view text);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Canonical text form; ParseConfig(ToText(c)) == c.
std::string ToText(const ExperimentConfig& config);

// 17 significant digits, so the text reads back to the same double.
std::string FormatDouble(double value);

}  // namespace coexist

#endif  // COEXIST_CONFIG_HPP_

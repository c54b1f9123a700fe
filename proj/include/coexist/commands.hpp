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


#ifndef COEXIST_COMMANDS_HPP_
#define COEXIST_COMMANDS_HPP_

#include <string>

#include "coexist/config.hpp"

// Subcommand bodies. Each returns the complete CSV text (header included);
// numbers are printed with 17 significant digits.
namespace coexist {

// Equilibrium and thresholds for every age in config.ages (default sigma_S).
std::string CmdMsne(const ExperimentConfig& config);

// Slot probabilities and expected stage payoffs at each age for the MSNE,
// the cooperative optimum, and the two pure AON choices.
std::string CmdStage(const ExperimentConfig& config);

// Monte Carlo over the alpha x p_r grid in config.mode.
std::string SimulateHeader();
std::string CmdSimulate(const ExperimentConfig& config);

// Deviation margins and preference flags per (alpha, p_r) cell.
std::string CmdRegion(const ExperimentConfig& config);

// Cooperation minus competition per (alpha, p_r) cell.
std::string CmdGain(const ExperimentConfig& config, bool self_test = false);

// Competitive tau frequencies per (N_A, N_T); an empty n_ton list pairs
// N_T = N_A.
std::string CmdFreq(const ExperimentConfig& config);

// Default alpha and p_r axis of the region sweep: 0.05, 0.15, ..., 0.95.
std::vector<double> DefaultRegionAxis();

}  // namespace coexist

#endif  // COEXIST_COMMANDS_HPP_

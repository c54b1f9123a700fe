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


#include "coexist/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace coexist {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> SplitList(std::string_view s) {
  std::vector<std::string_view> out;
  if (Trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(Trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T ParseNumber(std::string_view text, int line, const std::string& field) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("cannot parse '" + std::string(text) + "' as a number", line, field);
  }
  return value;
}

bool ParseBool(std::string_view text, int line, const std::string& field) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("expected true or false, got '" + std::string(text) + "'", line, field);
}

Mode ParseMode(std::string_view text, int line, const std::string& field) {
  if (text == "competitive") return Mode::Competitive;
  if (text == "cooperative") return Mode::Cooperative;
  throw ConfigError("mode must be competitive or cooperative", line, field);
}

template <typename T>
std::vector<T> ParseList(std::string_view text, int line, const std::string& field) {
  std::vector<T> out;
  for (std::string_view item : SplitList(text)) {
    out.push_back(ParseNumber<T>(item, line, field));
  }
  return out;
}

template <typename T>
std::string JoinList(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += FormatDouble(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

bool SameScenario(const ScenarioParams& a, const ScenarioParams& b) {
  return a.sizes.aon == b.sizes.aon && a.sizes.ton == b.sizes.ton &&
         a.slots.idle == b.slots.idle && a.slots.success == b.slots.success &&
         a.slots.collision == b.slots.collision && a.rate == b.rate &&
         a.alpha == b.alpha && a.p_r == b.p_r && a.initial_age == b.initial_age;
}

}  // namespace

ConfigError::ConfigError(const std::string& message, int line, std::string field)
    : std::runtime_error([&] {
        std::string where;
        if (line > 0) where += "line " + std::to_string(line) + ": ";
        if (!field.empty()) where += field + ": ";
        return where + message;
      }()),
      line_(line),
      field_(std::move(field)) {}

std::string ToString(SlotScenario s) {
  switch (s) {
    case SlotScenario::SmallCollision:
      return "small_collision";
    case SlotScenario::EqualSlots:
      return "equal_slots";
    case SlotScenario::LargeCollision:
      return "large_collision";
    case SlotScenario::Explicit:
      return "explicit";
  }
  return "?";
}

SlotScenario ParseSlotScenario(std::string_view text) {
  for (SlotScenario s : {SlotScenario::SmallCollision, SlotScenario::EqualSlots,
                         SlotScenario::LargeCollision, SlotScenario::Explicit}) {
    if (text == ToString(s)) return s;
  }
  throw ConfigError("unknown slot scenario '" + std::string(text) + "'");
}

double CollisionRatio(SlotScenario s) {
  switch (s) {
    case SlotScenario::SmallCollision:
      return 0.1;
    case SlotScenario::EqualSlots:
      return 1.0;
    case SlotScenario::LargeCollision:
      return 2.0;
    case SlotScenario::Explicit:
      break;
  }
  throw InvalidArgument("explicit slot scenario has no fixed collision ratio");
}

SlotLengths ExpandSlots(SlotScenario s, double beta) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  SlotLengths slots;
  slots.idle = beta;
  slots.success = 1.0 + beta;
  slots.collision = CollisionRatio(s) * slots.success;
  return slots;
}

std::string FormatDouble(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

ExperimentConfig::ExperimentConfig() {
  scenario.slots = ExpandSlots(slot_scenario, beta);
  scenario.initial_age = scenario.slots.success;
}

void ExperimentConfig::Finalize() {
  if (slot_scenario != SlotScenario::Explicit) {
    scenario.slots = ExpandSlots(slot_scenario, beta);
  }
  try {
    scenario.Validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), 0, "scenario");
  }
  if (n_runs < 1) throw ConfigError("must be >= 1", 0, "run.runs");
  if (n_stages < 1) throw ConfigError("must be >= 1", 0, "run.stages");
  if (threads < 1) throw ConfigError("must be >= 1", 0, "run.threads");
  for (double a : ages) {
    if (!(a >= 0.0)) throw ConfigError("ages must be non-negative", 0, "grid.ages");
  }
  for (double a : alpha_grid) {
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("values must lie in (0,1)", 0, "grid.alpha");
  }
  for (double p : pr_grid) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("values must lie in [0,1]", 0, "grid.p_r");
  }
  for (const auto* list : {&aon_sizes, &ton_sizes}) {
    for (int n : *list) {
      if (n < 1) throw ConfigError("network sizes must be >= 1", 0, "grid");
    }
  }
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return SameScenario(a.scenario, b.scenario) && a.slot_scenario == b.slot_scenario &&
         a.beta == b.beta && a.mode == b.mode && a.n_runs == b.n_runs &&
         a.n_stages == b.n_stages && a.master_seed == b.master_seed &&
         a.threads == b.threads && a.accumulate_expected == b.accumulate_expected &&
         a.ages == b.ages && a.alpha_grid == b.alpha_grid && a.pr_grid == b.pr_grid &&
         a.aon_sizes == b.aon_sizes && a.ton_sizes == b.ton_sizes;
}

ExperimentConfig ParseConfig(std::string_view text) {
  ExperimentConfig c;
  bool initial_age_set = false;
  bool explicit_slot_set = false;
  using Setter = std::function<void(std::string_view, int, const std::string&)>;
  auto real = [](double& dst) -> Setter {
    return [&dst](std::string_view v, int line, const std::string& f) {
      dst = ParseNumber<double>(v, line, f);
    };
  };
  auto integer = [](int& dst) -> Setter {
    return [&dst](std::string_view v, int line, const std::string& f) {
      dst = ParseNumber<int>(v, line, f);
    };
  };
  auto slot = [&](double& dst) -> Setter {
    return [&dst, &explicit_slot_set](std::string_view v, int line, const std::string& f) {
      dst = ParseNumber<double>(v, line, f);
      explicit_slot_set = true;
    };
  };

  const std::map<std::string, Setter> keys = {
      {"scenario.n_aon", integer(c.scenario.sizes.aon)},
      {"scenario.n_ton", integer(c.scenario.sizes.ton)},
      {"scenario.slot_scenario",
       [&](std::string_view v, int line, const std::string& f) {
         try {
           c.slot_scenario = ParseSlotScenario(v);
         } catch (const ConfigError& e) {
           throw ConfigError(e.what(), line, f);
         }
       }},
      {"scenario.beta", real(c.beta)},
      {"scenario.sigma_idle", slot(c.scenario.slots.idle)},
      {"scenario.sigma_success", slot(c.scenario.slots.success)},
      {"scenario.sigma_collision", slot(c.scenario.slots.collision)},
      {"scenario.rate", real(c.scenario.rate)},
      {"scenario.alpha", real(c.scenario.alpha)},
      {"scenario.p_r", real(c.scenario.p_r)},
      {"scenario.initial_age",
       [&](std::string_view v, int line, const std::string& f) {
         c.scenario.initial_age = ParseNumber<double>(v, line, f);
         initial_age_set = true;
       }},
      {"run.mode",
       [&](std::string_view v, int line, const std::string& f) {
         c.mode = ParseMode(v, line, f);
       }},
      {"run.runs", integer(c.n_runs)},
      {"run.stages", integer(c.n_stages)},
      {"run.seed",
       [&](std::string_view v, int line, const std::string& f) {
         c.master_seed = ParseNumber<std::uint64_t>(v, line, f);
       }},
      {"run.threads", integer(c.threads)},
      {"run.accumulate_expected",
       [&](std::string_view v, int line, const std::string& f) {
         c.accumulate_expected = ParseBool(v, line, f);
       }},
      {"grid.ages",
       [&](std::string_view v, int line, const std::string& f) {
         c.ages = ParseList<double>(v, line, f);
       }},
      {"grid.alpha",
       [&](std::string_view v, int line, const std::string& f) {
         c.alpha_grid = ParseList<double>(v, line, f);
       }},
      {"grid.p_r",
       [&](std::string_view v, int line, const std::string& f) {
         c.pr_grid = ParseList<double>(v, line, f);
       }},
      {"grid.n_aon",
       [&](std::string_view v, int line, const std::string& f) {
         c.aon_sizes = ParseList<int>(v, line, f);
       }},
      {"grid.n_ton",
       [&](std::string_view v, int line, const std::string& f) {
         c.ton_sizes = ParseList<int>(v, line, f);
       }},
  };

  std::string section;
  std::map<std::string, int> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      if (section != "scenario" && section != "run" && section != "grid") {
        throw ConfigError("unknown section [" + section + "]", line_no);
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == line.npos) throw ConfigError("expected key = value", line_no);
    if (section.empty()) throw ConfigError("key outside of a section", line_no);
    const std::string field = section + "." + std::string(Trim(line.substr(0, eq)));
    const auto it = keys.find(field);
    if (it == keys.end()) throw ConfigError("unknown key", line_no, field);
    if (const auto [prev, fresh] = seen.emplace(field, line_no); !fresh) {
      throw ConfigError("duplicate key, first set on line " + std::to_string(prev->second),
                        line_no, field);
    }
    it->second(Trim(line.substr(eq + 1)), line_no, field);
  }

  if (explicit_slot_set && c.slot_scenario != SlotScenario::Explicit) {
    throw ConfigError("sigma_* keys need slot_scenario = explicit", 0,
                      "scenario.slot_scenario");
  }
  if (c.slot_scenario != SlotScenario::Explicit) {
    c.scenario.slots = ExpandSlots(c.slot_scenario, c.beta);
  }
  if (!initial_age_set) c.scenario.initial_age = c.scenario.slots.success;
  c.Finalize();
  return c;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

std::string ToText(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[scenario]\n"
      << "n_aon = " << c.scenario.sizes.aon << "\n"
      << "n_ton = " << c.scenario.sizes.ton << "\n"
      << "slot_scenario = " << ToString(c.slot_scenario) << "\n"
      << "beta = " << FormatDouble(c.beta) << "\n";
  if (c.slot_scenario == SlotScenario::Explicit) {
    out << "sigma_idle = " << FormatDouble(c.scenario.slots.idle) << "\n"
        << "sigma_success = " << FormatDouble(c.scenario.slots.success) << "\n"
        << "sigma_collision = " << FormatDouble(c.scenario.slots.collision) << "\n";
  }
  out << "rate = " << FormatDouble(c.scenario.rate) << "\n"
      << "alpha = " << FormatDouble(c.scenario.alpha) << "\n"
      << "p_r = " << FormatDouble(c.scenario.p_r) << "\n"
      << "initial_age = " << FormatDouble(c.scenario.initial_age) << "\n"
      << "\n[run]\n"
      << "mode = " << ToString(c.mode) << "\n"
      << "runs = " << c.n_runs << "\n"
      << "stages = " << c.n_stages << "\n"
      << "seed = " << c.master_seed << "\n"
      << "threads = " << c.threads << "\n"
      << "accumulate_expected = " << (c.accumulate_expected ? "true" : "false") << "\n"
      << "\n[grid]\n"
      << "ages = " << JoinList(c.ages) << "\n"
      << "alpha = " << JoinList(c.alpha_grid) << "\n"
      << "p_r = " << JoinList(c.pr_grid) << "\n"
      << "n_aon = " << JoinList(c.aon_sizes) << "\n"
      << "n_ton = " << JoinList(c.ton_sizes) << "\n";
  return out.str();
}

}  // namespace coexist

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

#ifndef COEXIST_RNG_HPP_
#define COEXIST_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace coexist {

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Child seed for a sub-task. Folds each coordinate into the parent with
// Mix64: s <- Mix64(s ^ Mix64(coordinate)). Used for (master, run) and
// (master, row, col) so that results do not depend on scheduling.
constexpr std::uint64_t DeriveSeed(std::uint64_t parent,
                                   std::initializer_list<std::uint64_t> coords) {
  std::uint64_t s = parent;
  for (std::uint64_t c : coords) s = Mix64(s ^ Mix64(c));
  return s;
}

// Random stream owned by one task. mt19937_64's output sequence is fixed by
// the standard and the double conversion below is explicit, so a stream is
// reproducible on any conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1) built from the top 53 bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace coexist

#endif  // COEXIST_RNG_HPP_

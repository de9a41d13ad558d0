// Copyright 2026 The moralsim Authors
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

#ifndef MORALSIM_RANDOM_HPP_
#define MORALSIM_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace moralsim {

// Reproducible random stream. Wraps std::mt19937_64, whose output sequence is
// fixed by the standard, and derives doubles from raw bits instead of
// std::uniform_real_distribution so draws are identical across standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Uniform integer in [0, n). Uses rejection to avoid modulo bias.
  std::uint64_t Below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to hash derivation tuples into seeds.
std::uint64_t Mix64(std::uint64_t x);

// Stream for one agent within one experiment cell. agent_index 0 is the moral
// player M, 1 the opponent O, 2 the environment.
Rng DeriveRng(std::uint64_t master_seed, std::uint64_t pairing_index,
              std::uint64_t seed, std::uint64_t agent_index);

inline constexpr std::uint64_t kAgentM = 0;
inline constexpr std::uint64_t kAgentO = 1;
inline constexpr std::uint64_t kEnvironmentStream = 2;

}  // namespace moralsim

#endif  // MORALSIM_RANDOM_HPP_

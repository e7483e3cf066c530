// Copyright 2026 The ldpt Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace ldpt {

/// Deterministic random stream owned by exactly one caller at a time.
///
/// Uniform doubles are built from the top 53 bits of the raw engine output,
/// never from std::uniform_real_distribution, so the sequence of draws is
/// identical across platforms and standard-library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Biased coin flip; consumes exactly one uniform variate.
  bool flip(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 mix of (master_seed, stream_index) into an engine seed.
///
/// The derivation is fixed and documented in the implementation; it is part
/// of the reproducibility contract and must not change between releases.
std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t stream_index);

/// Independent stream for one trial of a seeded experiment. Distinct trial
/// indices yield decorrelated streams; the same (seed, index) pair always
/// yields the same stream.
inline Rng derive_stream(std::uint64_t master_seed, std::uint64_t trial_index) {
  return Rng(derive_stream_seed(master_seed, trial_index));
}

}  // namespace ldpt

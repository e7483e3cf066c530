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

#include "ldpt/rng.hpp"

namespace ldpt {

namespace {

// SplitMix64 output function (Steele, Lea & Flood). Bijective on 64-bit
// words, so distinct inputs never collide.
std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

// Counter-based derivation: the stream seed for index i is the SplitMix64
// mix of the mixed master seed with the i-th multiple of the golden-ratio
// increment. Scheduling order of trials cannot affect the streams because
// each seed is a pure function of (master_seed, stream_index).
std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t stream_index) {
  const std::uint64_t mixed_master = splitmix64(master_seed);
  const std::uint64_t counter = (stream_index + 1) * 0x9E3779B97F4A7C15ULL;
  return splitmix64(mixed_master ^ counter);
}

}  // namespace ldpt

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
#include <functional>
#include <vector>

#include "ldpt/env.hpp"
#include "ldpt/rng.hpp"

namespace ldpt {

/// Safety cap on total pulls. The stopping rule is unreachable in
/// expectation for zero-gap arms and eps == 0, so every run needs a cap.
inline constexpr std::uint64_t kDefaultFcMaxRounds = 10'000'000;

/// Confidence radius sqrt(log(4 K t^3 / delta) / (8 pulls)), scaled by the
/// multiplier (1.0 reproduces the analyzed rule). Evaluated in log space so
/// t^3 cannot overflow.
double radius(std::size_t num_arms, std::uint64_t t, double delta,
              std::uint64_t pulls, double multiplier = 1.0);

/// Running statistics of one elimination run; as in the fixed-budget
/// setting, only privatized responses enter the state and empirical means
/// are formed on demand from (bit-sum, count) pairs.
struct FCState {
  std::uint64_t t = 0;  // total pulls so far
  std::vector<std::uint64_t> pulls;
  std::vector<std::uint64_t> sum_bits;

  explicit FCState(std::size_t num_arms)
      : pulls(num_arms, 0), sum_bits(num_arms, 0) {}

  double mu_hat(std::size_t arm) const {
    return static_cast<double>(sum_bits[arm]) /
           static_cast<double>(pulls[arm]);
  }
};

struct FCResult {
  std::vector<std::size_t> selected;  // S_t at termination
  std::uint64_t stopping_time = 0;    // total pulls
  bool stopped = false;               // false when the cap was hit
  std::vector<std::uint64_t> pulls_final;
  std::vector<double> mu_hat_final;
};

namespace detail {

/// Per-iteration snapshot handed to an observer; used by invariant tests.
struct FcIteration {
  std::uint64_t t = 0;
  const std::vector<bool>* in_accept_set = nullptr;   // S_t membership
  const std::vector<bool>* in_shifted_set = nullptr;  // shifted-set membership
  const std::vector<double>* radii = nullptr;
  bool stopping = false;
  std::size_t pulled_arm = 0;  // meaningful only when !stopping
};

using FcObserver = std::function<void(const FcIteration&)>;

FCResult run_fixed_confidence_observed(const Instance& inst, double eps,
                                       double delta, Rng& rng,
                                       std::uint64_t max_rounds,
                                       double radius_multiplier,
                                       const FcObserver& observer);

}  // namespace detail

/// Confidence-interval elimination over privatized responses. Pulls each arm
/// once, then repeatedly: accept-set S_t = {i : mu_hat_i >= tau_eps}; shift
/// each accepted mean down by its radius and each rejected mean up; stop and
/// return S_t when shifting changes nothing; otherwise pull the largest-
/// radius arm among those whose shift crossed the threshold (lowest index on
/// ties). Returns stopped == false with the current S_t when the pull count
/// reaches max_rounds.
FCResult run_fixed_confidence(const Instance& inst, double eps, double delta,
                              Rng& rng,
                              std::uint64_t max_rounds = kDefaultFcMaxRounds,
                              double radius_multiplier = 1.0);

/// True iff the returned set is exactly {i : mean_i >= threshold}; the
/// boundary mean_i == threshold counts as above.
bool fc_correct(const FCResult& result, const Instance& inst);

}  // namespace ldpt

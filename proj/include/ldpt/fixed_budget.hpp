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

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ldpt/env.hpp"
#include "ldpt/rng.hpp"

namespace ldpt {

/// Running statistics of one fixed-budget run. Only privatized responses are
/// recorded; the true rewards never enter the state. Empirical means are
/// kept as (bit-sum, count) pairs and formed on demand.
struct FBState {
  std::uint64_t t = 0;
  std::vector<std::uint64_t> pulls;
  std::vector<std::uint64_t> sum_bits;

  explicit FBState(std::size_t num_arms)
      : pulls(num_arms, 0), sum_bits(num_arms, 0) {}

  double mu_hat(std::size_t arm) const {
    return static_cast<double>(sum_bits[arm]) /
           static_cast<double>(pulls[arm]);
  }
};

struct FBResult {
  std::vector<std::size_t> selected;  // arms reported above the threshold
  std::vector<std::uint64_t> pulls_final;
  std::vector<double> mu_hat_final;
  std::uint64_t budget = 0;
  bool below_guarantee_budget = false;  // budget < 2 K
  bool vacuous_privacy = false;         // eps == 0: responses carry no signal
};

/// Exploration index sqrt(T_k) * (|tau_eps - mu_hat_k| + zeta_eps). The arm
/// minimizing it is pulled next. Throws if the arm was never pulled.
inline double compute_index(const FBState& state, std::size_t arm,
                            const PrivatizedView& view) {
  if (arm >= state.pulls.size()) {
    throw std::invalid_argument("arm out of range");
  }
  if (state.pulls[arm] == 0) {
    throw std::invalid_argument("arm has never been pulled");
  }
  const double deviation =
      std::abs(view.tau_eps - state.mu_hat(arm)) + view.zeta_eps;
  return std::sqrt(static_cast<double>(state.pulls[arm])) * deviation;
}

namespace detail {

/// Core loop shared by the live runner and the exact enumeration oracle.
/// `next_bit(arm)` supplies the binary response for a pull of `arm`; the
/// trajectory is a deterministic function of the bit sequence. Rounds
/// 1..K pull each arm once in index order; afterwards the argmin-index arm
/// is pulled, ties resolved toward the lowest arm index. Selection at the
/// end uses the strict comparison mu_hat > tau_eps.
template <class BitSource>
FBResult run_fb_core(const Instance& inst, const PrivatizedView& view,
                     std::uint64_t budget, BitSource&& next_bit) {
  const std::size_t num_arms = inst.num_arms();
  if (budget < num_arms) {
    throw std::invalid_argument("budget must be >= number of arms");
  }
  FBState state(num_arms);
  for (std::uint64_t t = 1; t <= budget; ++t) {
    std::size_t arm = 0;
    if (t <= num_arms) {
      arm = static_cast<std::size_t>(t - 1);
    } else {
      double best = compute_index(state, 0, view);
      for (std::size_t k = 1; k < num_arms; ++k) {
        const double index = compute_index(state, k, view);
        if (index < best) {
          best = index;
          arm = k;
        }
      }
    }
    const bool bit = next_bit(arm);
    state.pulls[arm] += 1;
    state.sum_bits[arm] += bit ? 1 : 0;
    state.t = t;
  }
  FBResult result;
  result.budget = budget;
  result.pulls_final = state.pulls;
  result.mu_hat_final.reserve(num_arms);
  for (std::size_t k = 0; k < num_arms; ++k) {
    result.mu_hat_final.push_back(state.mu_hat(k));
    if (state.mu_hat(k) > view.tau_eps) result.selected.push_back(k);
  }
  result.below_guarantee_budget = budget < 2 * num_arms;
  result.vacuous_privacy = view.eps == 0.0;
  return result;
}

}  // namespace detail

/// One fixed-budget run: each pull draws a true reward, privatizes it, and
/// updates only the privatized statistics. Requires budget >= K; budgets
/// below 2 K run but are flagged, since the loss guarantee assumes 2 K.
FBResult run_fixed_budget(const Instance& inst, double eps,
                          std::uint64_t budget, Rng& rng);

/// Classification loss: 1 when a selected arm lies at or below
/// threshold - tolerance, or an unselected arm lies strictly above
/// threshold + tolerance; arms inside the margin never contribute.
int fb_loss(const FBResult& result, const Instance& inst);

}  // namespace ldpt

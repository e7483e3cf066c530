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

#include "ldpt/fixed_confidence.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ldpt/privacy.hpp"

namespace ldpt {

double radius(std::size_t num_arms, std::uint64_t t, double delta,
              std::uint64_t pulls, double multiplier) {
  if (num_arms == 0 || t == 0 || pulls == 0) {
    throw std::invalid_argument("num_arms, t and pulls must be >= 1");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1)");
  }
  if (!(multiplier > 0.0)) {
    throw std::invalid_argument("multiplier must be > 0");
  }
  const double log_term = std::log(4.0 * static_cast<double>(num_arms) / delta) +
                          3.0 * std::log(static_cast<double>(t));
  return multiplier *
         std::sqrt(log_term / (8.0 * static_cast<double>(pulls)));
}

namespace detail {

FCResult run_fixed_confidence_observed(const Instance& inst, double eps,
                                       double delta, Rng& rng,
                                       std::uint64_t max_rounds,
                                       double radius_multiplier,
                                       const FcObserver& observer) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("eps must be >= 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1)");
  }
  const std::size_t num_arms = inst.num_arms();
  if (max_rounds < num_arms) {
    throw std::invalid_argument("max_rounds must be >= number of arms");
  }

  const PrivatizedView view =
      privatized_view(inst, eps, Setting::kFixedConfidence);

  FCState state(num_arms);
  const auto pull_arm = [&](std::size_t arm) {
    const double reward = sample_reward(inst, arm, rng);
    const bool bit = privatize(reward, eps, rng);
    state.pulls[arm] += 1;
    state.sum_bits[arm] += bit ? 1 : 0;
    state.t += 1;
  };

  for (std::size_t arm = 0; arm < num_arms; ++arm) pull_arm(arm);

  std::vector<double> mu_hat(num_arms, 0.0);
  std::vector<double> radii(num_arms, 0.0);
  std::vector<bool> in_accept(num_arms, false);
  std::vector<bool> in_shifted(num_arms, false);

  const auto finish = [&](bool stopped) {
    FCResult result;
    result.stopping_time = state.t;
    result.stopped = stopped;
    result.pulls_final = state.pulls;
    result.mu_hat_final = mu_hat;
    for (std::size_t i = 0; i < num_arms; ++i) {
      if (in_accept[i]) result.selected.push_back(i);
    }
    return result;
  };

  for (;;) {
    bool sets_equal = true;
    for (std::size_t i = 0; i < num_arms; ++i) {
      mu_hat[i] = state.mu_hat(i);
      radii[i] =
          radius(num_arms, state.t, delta, state.pulls[i], radius_multiplier);
      in_accept[i] = mu_hat[i] >= view.tau_eps;
      const double shifted =
          in_accept[i] ? mu_hat[i] - radii[i] : mu_hat[i] + radii[i];
      in_shifted[i] = shifted >= view.tau_eps;
      if (in_shifted[i] != in_accept[i]) sets_equal = false;
    }

    if (sets_equal) {
      if (observer) {
        FcIteration it;
        it.t = state.t;
        it.in_accept_set = &in_accept;
        it.in_shifted_set = &in_shifted;
        it.radii = &radii;
        it.stopping = true;
        observer(it);
      }
      return finish(true);
    }
    if (state.t >= max_rounds) {
      return finish(false);
    }

    // Largest radius over the symmetric difference of the two sets; the
    // radius depends on an arm only through its pull count, so this is the
    // least-pulled undecided arm. Ties go to the lowest index.
    std::size_t chosen = num_arms;
    double best_radius = -1.0;
    std::uint64_t fewest_pulls = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t i = 0; i < num_arms; ++i) {
      if (in_accept[i] == in_shifted[i]) continue;
      fewest_pulls = std::min(fewest_pulls, state.pulls[i]);
      if (radii[i] > best_radius) {
        best_radius = radii[i];
        chosen = i;
      }
    }
    assert(chosen < num_arms);
    // The radius is strictly decreasing in the pull count, so the chosen arm
    // must be a least-pulled candidate.
    assert(state.pulls[chosen] == fewest_pulls);
    (void)fewest_pulls;

    if (observer) {
      FcIteration it;
      it.t = state.t;
      it.in_accept_set = &in_accept;
      it.in_shifted_set = &in_shifted;
      it.radii = &radii;
      it.stopping = false;
      it.pulled_arm = chosen;
      observer(it);
    }

    pull_arm(chosen);
  }
}

}  // namespace detail

FCResult run_fixed_confidence(const Instance& inst, double eps, double delta,
                              Rng& rng, std::uint64_t max_rounds,
                              double radius_multiplier) {
  return detail::run_fixed_confidence_observed(
      inst, eps, delta, rng, max_rounds, radius_multiplier, nullptr);
}

bool fc_correct(const FCResult& result, const Instance& inst) {
  if (result.pulls_final.size() != inst.num_arms()) {
    throw std::invalid_argument("result does not match instance arity");
  }
  std::vector<std::size_t> target;
  for (std::size_t i = 0; i < inst.num_arms(); ++i) {
    if (inst.means[i] >= inst.threshold) target.push_back(i);
  }
  return result.selected == target;
}

}  // namespace ldpt

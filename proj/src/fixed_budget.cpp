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

#include "ldpt/fixed_budget.hpp"

#include <algorithm>
#include <stdexcept>

#include "ldpt/privacy.hpp"

namespace ldpt {

FBResult run_fixed_budget(const Instance& inst, double eps,
                          std::uint64_t budget, Rng& rng) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("eps must be >= 0");
  }
  const PrivatizedView view =
      privatized_view(inst, eps, Setting::kFixedBudget);
  return detail::run_fb_core(inst, view, budget, [&](std::size_t arm) {
    const double reward = sample_reward(inst, arm, rng);
    return privatize(reward, eps, rng);
  });
}

int fb_loss(const FBResult& result, const Instance& inst) {
  if (result.pulls_final.size() != inst.num_arms()) {
    throw std::invalid_argument("result does not match instance arity");
  }
  std::vector<bool> selected(inst.num_arms(), false);
  for (std::size_t arm : result.selected) {
    if (arm >= inst.num_arms()) {
      throw std::invalid_argument("selected arm out of range");
    }
    selected[arm] = true;
  }
  for (std::size_t i = 0; i < inst.num_arms(); ++i) {
    if (selected[i] && inst.means[i] <= inst.threshold - inst.tolerance) {
      return 1;
    }
    if (!selected[i] && inst.means[i] > inst.threshold + inst.tolerance) {
      return 1;
    }
  }
  return 0;
}

}  // namespace ldpt

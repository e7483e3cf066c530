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

#include <cstddef>
#include <optional>
#include <vector>

#include "ldpt/rng.hpp"

namespace ldpt {

/// Which objective the gap/complexity quantities serve. The fixed-budget
/// setting widens every gap by the tolerance; the fixed-confidence setting
/// ignores the tolerance.
enum class Setting { kFixedBudget, kFixedConfidence };

/// Reward law of a single arm, supported on [0,1]. Bernoulli(mu) by default;
/// alternatively a finite discrete law whose mean must match the arm's
/// declared mean to 1e-12.
class RewardDist {
 public:
  static RewardDist bernoulli(double mu);
  static RewardDist discrete(std::vector<double> support,
                             std::vector<double> probs);

  bool is_bernoulli() const { return support_.empty(); }
  double mean() const { return mean_; }
  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }

  /// One draw; consumes exactly one uniform variate.
  double sample(Rng& rng) const;

 private:
  RewardDist(double mean, std::vector<double> support,
             std::vector<double> probs)
      : mean_(mean), support_(std::move(support)), probs_(std::move(probs)) {}

  double mean_ = 0.0;
  std::vector<double> support_;  // empty for Bernoulli
  std::vector<double> probs_;
};

/// Ground-truth bandit environment. Immutable after construction via
/// make_instance; safe to share across concurrent workers.
struct Instance {
  std::vector<double> means;      // per-arm true means, in [0,1]
  double threshold = 0.5;         // in [0,1]
  double tolerance = 0.0;         // >= 0
  std::vector<RewardDist> dists;  // one per arm

  std::size_t num_arms() const { return means.size(); }
};

Instance make_instance(std::vector<double> means, double threshold,
                       double tolerance);
Instance make_instance(std::vector<double> means, double threshold,
                       double tolerance, std::vector<RewardDist> dists);

/// Per-arm distances from the threshold and the summed inverse-square
/// complexity. h == +inf exactly when some gap is zero.
struct GapProfile {
  Setting setting = Setting::kFixedBudget;
  std::vector<double> gaps;
  double h = 0.0;
};

GapProfile gap_profile(const Instance& inst, Setting setting);

/// The problem as seen through the randomized-response channel: means,
/// threshold and tolerance mapped by the affine response-mean map, plus the
/// induced gaps and complexity.
struct PrivatizedView {
  double eps = 0.0;
  std::vector<double> mu_eps;
  double tau_eps = 0.5;
  double zeta_eps = 0.0;  // 0 under Setting::kFixedConfidence
  std::vector<double> gaps_eps;
  double h_eps = 0.0;  // may be +inf
};

PrivatizedView privatized_view(const Instance& inst, double eps,
                               Setting setting);

/// Hard-instance family for the fixed-budget lower bound: every arm's mean
/// moves to threshold + |mean - threshold|/2 + tolerance, except the
/// designated arm (if any), which moves symmetrically below. All arms become
/// Bernoulli. Throws if a constructed mean leaves [0,1].
Instance fb_hard_env(const Instance& inst,
                     std::optional<std::size_t> below_arm);

/// Hard-instance family for the fixed-confidence lower bound: reflects one
/// arm's mean across the threshold, clipped to [0,1]; other arms unchanged.
/// The flipped arm becomes Bernoulli at its new mean.
Instance fc_flip_env(const Instance& inst, std::size_t arm);

/// Raw reward draw. Fed to the privacy mechanism, never observed directly
/// by the decision algorithms. Requires an exclusively owned stream.
double sample_reward(const Instance& inst, std::size_t arm, Rng& rng);

}  // namespace ldpt

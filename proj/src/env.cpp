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

#include "ldpt/env.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ldpt/privacy.hpp"

namespace ldpt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMeanMatchTol = 1e-12;

void check_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
  }
}

double sum_inverse_square(const std::vector<double>& gaps) {
  for (double g : gaps) {
    if (g == 0.0) return kInf;
  }
  double h = 0.0;
  for (double g : gaps) h += 1.0 / (g * g);
  return h;
}

}  // namespace

RewardDist RewardDist::bernoulli(double mu) {
  check_unit_interval(mu, "mean");
  return RewardDist(mu, {}, {});
}

RewardDist RewardDist::discrete(std::vector<double> support,
                                std::vector<double> probs) {
  if (support.empty() || support.size() != probs.size()) {
    throw std::invalid_argument(
        "discrete law needs matching non-empty support and probs");
  }
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    check_unit_interval(support[i], "support point");
    if (!(probs[i] >= 0.0)) {
      throw std::invalid_argument("probabilities must be >= 0");
    }
    total += probs[i];
    mean += support[i] * probs[i];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("probabilities must sum to 1");
  }
  return RewardDist(mean, std::move(support), std::move(probs));
}

double RewardDist::sample(Rng& rng) const {
  const double u = rng.uniform();
  if (is_bernoulli()) {
    return u < mean_ ? 1.0 : 0.0;
  }
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < support_.size(); ++i) {
    cumulative += probs_[i];
    if (u < cumulative) return support_[i];
  }
  return support_.back();
}

Instance make_instance(std::vector<double> means, double threshold,
                       double tolerance) {
  std::vector<RewardDist> dists;
  dists.reserve(means.size());
  for (double mu : means) dists.push_back(RewardDist::bernoulli(mu));
  return make_instance(std::move(means), threshold, tolerance,
                       std::move(dists));
}

Instance make_instance(std::vector<double> means, double threshold,
                       double tolerance, std::vector<RewardDist> dists) {
  if (means.empty()) {
    throw std::invalid_argument("instance needs at least one arm");
  }
  for (double mu : means) check_unit_interval(mu, "mean");
  check_unit_interval(threshold, "threshold");
  if (!(tolerance >= 0.0)) {
    throw std::invalid_argument("tolerance must be >= 0");
  }
  if (dists.size() != means.size()) {
    throw std::invalid_argument("dists must have one entry per arm");
  }
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (std::abs(dists[i].mean() - means[i]) > kMeanMatchTol) {
      throw std::invalid_argument("arm " + std::to_string(i) +
                                  ": distribution mean does not match");
    }
  }
  Instance inst;
  inst.means = std::move(means);
  inst.threshold = threshold;
  inst.tolerance = tolerance;
  inst.dists = std::move(dists);
  return inst;
}

GapProfile gap_profile(const Instance& inst, Setting setting) {
  GapProfile profile;
  profile.setting = setting;
  const double zeta =
      setting == Setting::kFixedBudget ? inst.tolerance : 0.0;
  profile.gaps.reserve(inst.num_arms());
  for (double mu : inst.means) {
    profile.gaps.push_back(std::abs(inst.threshold - mu) + zeta);
  }
  profile.h = sum_inverse_square(profile.gaps);
  return profile;
}

PrivatizedView privatized_view(const Instance& inst, double eps,
                               Setting setting) {
  PrivatizedView view;
  view.eps = eps;
  const double contraction = mean_contraction(eps);
  view.mu_eps.reserve(inst.num_arms());
  for (double mu : inst.means) view.mu_eps.push_back(private_mean(mu, eps));
  view.tau_eps = private_mean(inst.threshold, eps);
  view.zeta_eps = setting == Setting::kFixedBudget
                      ? inst.tolerance * contraction
                      : 0.0;
  // Gaps are computed as contraction * raw gap + zeta_eps, the factored form
  // of |mu_eps - tau_eps| + zeta_eps. The two are equal algebraically; the
  // factored form avoids cancellation when a mean sits near the threshold
  // and makes h_eps = contraction^-2 * h exact to rounding.
  view.gaps_eps.reserve(inst.num_arms());
  for (double mu : inst.means) {
    view.gaps_eps.push_back(std::abs(inst.threshold - mu) * contraction +
                            view.zeta_eps);
  }
  view.h_eps = sum_inverse_square(view.gaps_eps);
  return view;
}

Instance fb_hard_env(const Instance& inst,
                     std::optional<std::size_t> below_arm) {
  if (below_arm && *below_arm >= inst.num_arms()) {
    throw std::invalid_argument("below_arm out of range");
  }
  std::vector<double> means;
  means.reserve(inst.num_arms());
  for (std::size_t j = 0; j < inst.num_arms(); ++j) {
    const double half_gap = std::abs(inst.means[j] - inst.threshold) / 2.0;
    const double shifted =
        below_arm && *below_arm == j
            ? inst.threshold - half_gap - inst.tolerance
            : inst.threshold + half_gap + inst.tolerance;
    if (!(shifted >= 0.0 && shifted <= 1.0)) {
      throw std::invalid_argument("arm " + std::to_string(j) +
                                  ": constructed mean leaves [0,1]");
    }
    means.push_back(shifted);
  }
  return make_instance(std::move(means), inst.threshold, inst.tolerance);
}

Instance fc_flip_env(const Instance& inst, std::size_t arm) {
  if (arm >= inst.num_arms()) {
    throw std::invalid_argument("arm out of range");
  }
  std::vector<double> means = inst.means;
  // Reflect across the threshold: tau + |tau - mu| below, tau - |tau - mu|
  // at or above; both branches collapse to 2 tau - mu.
  means[arm] = std::clamp(2.0 * inst.threshold - means[arm], 0.0, 1.0);
  std::vector<RewardDist> dists = inst.dists;
  dists[arm] = RewardDist::bernoulli(means[arm]);
  return make_instance(std::move(means), inst.threshold, inst.tolerance,
                       std::move(dists));
}

double sample_reward(const Instance& inst, std::size_t arm, Rng& rng) {
  if (arm >= inst.num_arms()) {
    throw std::invalid_argument("arm out of range");
  }
  return inst.dists[arm].sample(rng);
}

}  // namespace ldpt

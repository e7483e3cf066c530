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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "ldpt/env.hpp"
#include "ldpt/privacy.hpp"
#include "ldpt/rng.hpp"
#include "ldpt/serialize.hpp"

using namespace ldpt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Instance random_instance(Rng& rng, std::size_t max_arms = 6) {
  const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() *
                                                     double(max_arms));
  std::vector<double> means;
  for (std::size_t i = 0; i < k; ++i) means.push_back(rng.uniform());
  const double tau = rng.uniform();
  const double zeta = 0.2 * rng.uniform();
  return make_instance(std::move(means), tau, zeta);
}

}  // namespace

TEST_CASE("make_instance validates its fields") {
  const Instance ok = make_instance({0.2, 0.8}, 0.5, 0.0);
  CHECK(ok.num_arms() == 2);
  CHECK(ok.dists[0].is_bernoulli());
  CHECK_THROWS_AS(make_instance({1.2}, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_instance({-0.1}, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_instance({0.2, 0.8}, 0.5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_instance({0.2, 0.8}, 1.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_instance({}, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("discrete laws must match the declared mean") {
  // Mean 0.5 on {0, 1} with equal mass.
  auto half = RewardDist::discrete({0.0, 1.0}, {0.5, 0.5});
  const Instance inst = make_instance({0.5}, 0.5, 0.0, {half});
  CHECK_FALSE(inst.dists[0].is_bernoulli());

  auto wrong = RewardDist::discrete({0.0, 1.0}, {0.9, 0.1});
  CHECK_THROWS_AS(make_instance({0.5}, 0.5, 0.0, {wrong}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RewardDist::discrete({0.0, 1.5}, {0.5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RewardDist::discrete({0.0, 1.0}, {0.5, 0.4}),
                  std::invalid_argument);
}

TEST_CASE("gap_profile hand values") {
  const Instance inst = make_instance({0.2, 0.8}, 0.5, 0.0);
  const GapProfile fb = gap_profile(inst, Setting::kFixedBudget);
  CHECK(fb.gaps[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(fb.gaps[1] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(fb.h == doctest::Approx(22.22222222222222).epsilon(1e-9));

  const Instance tol = make_instance({0.2, 0.8}, 0.5, 0.05);
  const GapProfile fb_tol = gap_profile(tol, Setting::kFixedBudget);
  CHECK(fb_tol.gaps[0] == doctest::Approx(0.35).epsilon(1e-12));
  CHECK(fb_tol.h == doctest::Approx(16.326530612244902).epsilon(1e-9));
  // The fixed-confidence profile ignores the tolerance.
  const GapProfile fc_tol = gap_profile(tol, Setting::kFixedConfidence);
  CHECK(fc_tol.gaps[0] == doctest::Approx(0.3).epsilon(1e-12));

  const Instance degenerate = make_instance({0.5}, 0.5, 0.0);
  const GapProfile fc = gap_profile(degenerate, Setting::kFixedConfidence);
  CHECK(fc.gaps[0] == 0.0);
  CHECK(fc.h == kInf);
}

TEST_CASE("gap_profile h is permutation invariant") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    Instance inst = random_instance(rng);
    const double h = gap_profile(inst, Setting::kFixedBudget).h;
    std::vector<double> shuffled = inst.means;
    // Fisher-Yates with the test stream.
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      const std::size_t j =
          static_cast<std::size_t>(rng.uniform() * double(i));
      std::swap(shuffled[i - 1], shuffled[j]);
    }
    const Instance perm =
        make_instance(shuffled, inst.threshold, inst.tolerance);
    const double h_perm = gap_profile(perm, Setting::kFixedBudget).h;
    if (std::isinf(h)) {
      CHECK(std::isinf(h_perm));
    } else {
      CHECK(h_perm == doctest::Approx(h).epsilon(1e-12));
    }
  }
}

TEST_CASE("privatized view hand values") {
  const Instance inst = make_instance({0.2, 0.8}, 0.5, 0.0);
  const double ln3 = std::log(3.0);
  const PrivatizedView view = privatized_view(inst, ln3, Setting::kFixedBudget);
  CHECK(view.mu_eps[1] == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(view.tau_eps == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(view.h_eps == doctest::Approx(88.88888888888889).epsilon(1e-9));
  CHECK(view.h_eps == doctest::Approx(4.0 * 22.22222222222222).epsilon(1e-9));

  const PrivatizedView collapsed =
      privatized_view(inst, 0.0, Setting::kFixedBudget);
  CHECK(collapsed.mu_eps[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(collapsed.h_eps == kInf);
}

TEST_CASE("privatized means stay inside the mechanism range") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(rng);
    const double eps = 5.0 * rng.uniform();
    const PrivatizedView view =
        privatized_view(inst, eps, Setting::kFixedBudget);
    const double e = std::exp(eps);
    for (double m : view.mu_eps) {
      CHECK(m >= 1.0 / (1.0 + e) - 1e-12);
      CHECK(m <= e / (1.0 + e) + 1e-12);
    }
  }
}

TEST_CASE("privatization preserves order across the threshold") {
  Rng rng(18);
  const std::vector<double> eps_grid = {0.1, std::log(2.0), 1.0, 2.0, 5.0};
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(rng);
    for (double eps : eps_grid) {
      const PrivatizedView view =
          privatized_view(inst, eps, Setting::kFixedBudget);
      for (std::size_t i = 0; i < inst.num_arms(); ++i) {
        const bool above_raw = inst.means[i] >= inst.threshold;
        const bool above_priv = view.mu_eps[i] >= view.tau_eps;
        CHECK(above_raw == above_priv);
      }
    }
  }
}

TEST_CASE("privatized complexity scales by the squared contraction") {
  Rng rng(19);
  const std::vector<double> eps_grid = {0.1, std::log(2.0), 1.0, 2.0, 5.0};
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(rng);
    const double h = gap_profile(inst, Setting::kFixedBudget).h;
    if (std::isinf(h)) continue;
    for (double eps : eps_grid) {
      const PrivatizedView view =
          privatized_view(inst, eps, Setting::kFixedBudget);
      const double c = mean_contraction(eps);
      CHECK(view.h_eps * c * c == doctest::Approx(h).epsilon(1e-9));
    }
  }
}

TEST_CASE("fixed-budget hard family hand values") {
  const Instance inst = make_instance({0.2, 0.8}, 0.5, 0.0);
  const Instance base = fb_hard_env(inst, std::nullopt);
  CHECK(base.means[0] == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(base.means[1] == doctest::Approx(0.65).epsilon(1e-12));

  const Instance flipped = fb_hard_env(inst, 0);
  CHECK(flipped.means[0] == doctest::Approx(0.35).epsilon(1e-12));
  CHECK(flipped.means[1] == doctest::Approx(0.65).epsilon(1e-12));

  const Instance zero_gap = fb_hard_env(make_instance({0.5}, 0.5, 0.0), 0);
  CHECK(zero_gap.means[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fixed-budget hard family rejects out-of-range constructions") {
  // 0.9 + |0.2 - 0.9|/2 + 0.5 leaves [0,1].
  const Instance inst = make_instance({0.2}, 0.9, 0.5);
  CHECK_THROWS_AS(fb_hard_env(inst, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(fb_hard_env(make_instance({0.2}, 0.5, 0.0), 3),
                  std::invalid_argument);
}

TEST_CASE("hard family differs from the base in exactly one arm") {
  Rng rng(20);
  for (int trial = 0; trial < 50; ++trial) {
    Instance inst = make_instance(
        {0.3 + 0.1 * rng.uniform(), 0.5 + 0.2 * rng.uniform(),
         0.4 + 0.2 * rng.uniform()},
        0.5, 0.05 * rng.uniform());
    const Instance base = fb_hard_env(inst, std::nullopt);
    for (std::size_t i = 0; i < inst.num_arms(); ++i) {
      const Instance env = fb_hard_env(inst, i);
      std::size_t differing = 0;
      for (std::size_t j = 0; j < inst.num_arms(); ++j) {
        if (env.means[j] != base.means[j]) ++differing;
      }
      if (inst.means[i] == inst.threshold && inst.tolerance == 0.0) {
        CHECK(differing == 0);  // zero-gap flip is the identity
      } else {
        CHECK(differing == 1);
        CHECK(env.means[i] != base.means[i]);
      }
    }
  }
}

TEST_CASE("fixed-confidence flip family") {
  const Instance inst = make_instance({0.3, 0.9, 0.2}, 0.5, 0.0);
  CHECK(fc_flip_env(inst, 0).means[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(fc_flip_env(inst, 1).means[1] == doctest::Approx(0.1).epsilon(1e-12));
  // Clip at the upper boundary: 0.9 + 0.7 exceeds 1.
  const Instance high = make_instance({0.2}, 0.9, 0.0);
  CHECK(fc_flip_env(high, 0).means[0] == 1.0);
  CHECK_THROWS_AS(fc_flip_env(inst, 5), std::invalid_argument);
}

TEST_CASE("flip is an involution when nothing clips") {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_instance(rng);
    for (std::size_t j = 0; j < inst.num_arms(); ++j) {
      const double reflected = 2.0 * inst.threshold - inst.means[j];
      if (reflected < 0.0 || reflected > 1.0) continue;  // clipped: skip
      const Instance twice = fc_flip_env(fc_flip_env(inst, j), j);
      CHECK(twice.means[j] == doctest::Approx(inst.means[j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("sample_reward point masses and moments") {
  Rng rng(22);
  const Instance ones = make_instance({1.0}, 0.5, 0.0);
  const Instance zeros = make_instance({0.0}, 0.5, 0.0);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_reward(ones, 0, rng) == 1.0);
    CHECK(sample_reward(zeros, 0, rng) == 0.0);
  }
  CHECK_THROWS_AS(sample_reward(ones, 2, rng), std::invalid_argument);

  const Instance bern = make_instance({0.8}, 0.5, 0.0);
  const int n = 200000;
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += sample_reward(bern, 0, rng);
  CHECK(std::abs(total / n - 0.8) <= 3.0 * std::sqrt(0.16 / n));

  // Discrete law: mean 0.5 over {0.1, 0.9}.
  const Instance disc = make_instance(
      {0.5}, 0.5, 0.0, {RewardDist::discrete({0.1, 0.9}, {0.5, 0.5})});
  double disc_total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = sample_reward(disc, 0, rng);
    CHECK((r == 0.1 || r == 0.9));
    disc_total += r;
  }
  CHECK(std::abs(disc_total / n - 0.5) <= 3.0 * std::sqrt(0.16 / n));
}

TEST_CASE("instance JSON round trip with canonical field names") {
  const Instance inst = make_instance({0.2, 0.8}, 0.45, 0.03);
  const nlohmann::json j = instance_to_json(inst);
  CHECK(j.contains("means"));
  CHECK(j.contains("threshold"));
  CHECK(j.contains("tolerance"));
  CHECK_FALSE(j.contains("dists"));  // omitted when every arm is Bernoulli
  const Instance back = instance_from_json(j);
  CHECK(back.means == inst.means);
  CHECK(back.threshold == inst.threshold);
  CHECK(back.tolerance == inst.tolerance);

  const Instance disc = make_instance(
      {0.5, 0.7}, 0.5, 0.0,
      {RewardDist::discrete({0.1, 0.9}, {0.5, 0.5}), RewardDist::bernoulli(0.7)});
  const nlohmann::json jd = instance_to_json(disc);
  CHECK(jd.contains("dists"));
  const Instance disc_back = instance_from_json(jd);
  CHECK_FALSE(disc_back.dists[0].is_bernoulli());
  CHECK(disc_back.dists[0].support() == std::vector<double>{0.1, 0.9});
  CHECK(disc_back.dists[1].is_bernoulli());
}

TEST_CASE("instance JSON reports missing fields by name") {
  nlohmann::json j = {{"means", {0.2, 0.8}}, {"tolerance", 0.0}};
  try {
    (void)instance_from_json(j);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("threshold") != std::string::npos);
  }
}

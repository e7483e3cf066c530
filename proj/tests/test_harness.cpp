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

#include <cmath>
#include <set>
#include <vector>

#include "ldpt/env.hpp"
#include "ldpt/harness.hpp"
#include "ldpt/rng.hpp"
#include "ldpt/serialize.hpp"

using namespace ldpt;

namespace {

// Frozen by tests/reference/fb_enumeration_reference.py, an independent
// replica of the replay-and-enumerate computation.
struct OracleCase {
  std::vector<double> means;
  double tau;
  double zeta;
  double eps;
  std::uint64_t budget;
  double expected_loss;
};

const double kLn3 = std::log(3.0);

const std::vector<OracleCase> kOracleCases = {
    {{0.8}, 0.5, 0.0, kLn3, 2, 0.5774999999999999},
    {{0.8}, 0.5, 0.0, kLn3, 6, 0.35291484374999993},
    {{0.8}, 0.5, 0.0, kLn3, 10, 0.24850449088144524},
    {{0.2, 0.8}, 0.5, 0.0, kLn3, 4, 0.62925624999999996},
    {{0.2, 0.8}, 0.5, 0.0, kLn3, 8, 0.4527924376171874},
    {{0.2, 0.8}, 0.5, 0.0, kLn3, 12, 0.38480171270721381},
    {{0.5}, 0.5, 0.0, kLn3, 2, 0.25},
    {{1.0}, 0.5, 0.0, 50.0, 2, 0.0},
    {{0.3, 0.7}, 0.55, 0.05, 1.0, 8, 0.58660350397711636},
};

}  // namespace

TEST_CASE("stream derivation is reproducible") {
  Rng a = derive_stream(42, 7);
  Rng b = derive_stream(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("neighboring streams differ immediately") {
  Rng a = derive_stream(42, 0);
  Rng b = derive_stream(42, 1);
  int differing = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next_u64() != b.next_u64()) ++differing;
  }
  CHECK(differing == 64);
}

TEST_CASE("distinct trial indices give distinct seeds") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    seeds.insert(derive_stream_seed(123456789, i));
  }
  CHECK(seeds.size() == 10000);
}

TEST_CASE("first draws across streams look uniform") {
  // Chi-square over 16 equal bins, 10^4 streams. Critical value for 15
  // degrees of freedom at the 0.001 level.
  const int n_streams = 10000;
  const int bins = 16;
  std::vector<int> counts(bins, 0);
  for (int i = 0; i < n_streams; ++i) {
    Rng rng = derive_stream(271828, static_cast<std::uint64_t>(i));
    const double u = rng.uniform();
    counts[static_cast<int>(u * bins)] += 1;
  }
  const double expected = double(n_streams) / bins;
  double stat = 0.0;
  for (int c : counts) {
    stat += (c - expected) * (c - expected) / expected;
  }
  CHECK(stat < 37.69729821835383);
}

TEST_CASE("enumeration oracle reproduces the frozen reference values") {
  for (const auto& oc : kOracleCases) {
    const Instance inst = make_instance(oc.means, oc.tau, oc.zeta);
    const double loss = exact_fb_oracle(inst, oc.eps, oc.budget);
    CHECK(loss == doctest::Approx(oc.expected_loss).epsilon(1e-9));
  }
}

TEST_CASE("single-arm oracle matches the closed binomial form") {
  // With one arm the policy has no choices: the run is T coin flips with
  // the privatized mean, and the arm is excluded exactly when at most
  // floor(T/2) of them come up heads. This closed form shares nothing with
  // the replay machinery.
  const Instance inst = make_instance({0.8}, 0.5, 0.0);
  const double mu_eps = 0.65;
  for (std::uint64_t budget : {2, 6, 10}) {
    double p_excluded = 0.0;
    double binom = 1.0;  // C(budget, k), built incrementally
    for (std::uint64_t k = 0; k <= budget / 2; ++k) {
      if (k > 0) {
        binom *= static_cast<double>(budget - k + 1) / static_cast<double>(k);
      }
      p_excluded += binom * std::pow(mu_eps, static_cast<double>(k)) *
                    std::pow(1.0 - mu_eps, static_cast<double>(budget - k));
    }
    CHECK(exact_fb_oracle(inst, kLn3, budget) ==
          doctest::Approx(p_excluded).epsilon(1e-12));
  }
}

TEST_CASE("enumeration oracle rejects unsupported inputs") {
  const Instance big = make_instance({0.5}, 0.5, 0.0);
  CHECK_THROWS_AS(exact_fb_oracle(big, 1.0, 25), std::invalid_argument);

  const Instance discrete = make_instance(
      {0.5}, 0.5, 0.0, {RewardDist::discrete({0.1, 0.9}, {0.5, 0.5})});
  CHECK_THROWS_AS(exact_fb_oracle(discrete, 1.0, 4), std::invalid_argument);
}

TEST_CASE("monte carlo matches the oracle within sampling error") {
  const Instance inst = make_instance({0.2, 0.8}, 0.5, 0.0);
  const double exact = exact_fb_oracle(inst, kLn3, 4);

  ExperimentConfig config;
  config.instance = inst;
  config.eps = kLn3;
  config.setting = FbSetting{4};
  config.n_trials = 40000;
  config.master_seed = 1337;
  config.workers = 0;
  const Report report = monte_carlo(config);
  CHECK(std::abs(report.estimate - exact) <= 3.0 * report.std_err);
  CHECK(report.mean_pulls.size() == 2);
  CHECK(report.mean_pulls[0] + report.mean_pulls[1] ==
        doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("reports are bit-identical across worker counts") {
  ExperimentConfig config;
  config.instance = make_instance({0.3, 0.6, 0.8}, 0.55, 0.01);
  config.eps = 1.0;
  config.setting = FbSetting{60};
  config.n_trials = 3000;
  config.master_seed = 99;

  config.workers = 1;
  const Report serial = monte_carlo(config);
  config.workers = 8;
  const Report parallel = monte_carlo(config);
  CHECK(serial.estimate == parallel.estimate);
  CHECK(serial.std_err == parallel.std_err);
  CHECK(serial.mean_pulls == parallel.mean_pulls);

  ExperimentConfig fc_config;
  fc_config.instance = make_instance({0.2, 0.8}, 0.5, 0.0);
  fc_config.eps = 2.0;
  fc_config.setting = FcSetting{0.1, 100000};
  fc_config.n_trials = 400;
  fc_config.master_seed = 7;
  fc_config.workers = 1;
  const Report fc_serial = monte_carlo(fc_config);
  fc_config.workers = 5;
  const Report fc_parallel = monte_carlo(fc_config);
  CHECK(fc_serial.estimate == fc_parallel.estimate);
  CHECK(fc_serial.stopping_time->mean == fc_parallel.stopping_time->mean);
  CHECK(fc_serial.stopping_time->median == fc_parallel.stopping_time->median);
  CHECK(fc_serial.stopping_time->p95 == fc_parallel.stopping_time->p95);
  CHECK(fc_serial.mean_pulls == fc_parallel.mean_pulls);
}

TEST_CASE("single-trial reports carry the not-applicable sentinel") {
  ExperimentConfig config;
  config.instance = make_instance({0.8}, 0.5, 0.0);
  config.eps = 1.0;
  config.setting = FbSetting{4};
  config.n_trials = 1;
  config.master_seed = 5;
  const Report report = monte_carlo(config);
  CHECK(std::isnan(report.std_err));
  const nlohmann::json j = report_to_json(report);
  CHECK(j.at("stderr") == "nan");
}

TEST_CASE("fixed-confidence reports aggregate stopping statistics") {
  ExperimentConfig config;
  config.instance = make_instance({0.2, 0.8}, 0.5, 0.0);
  config.eps = 2.0;
  config.setting = FcSetting{0.1, 100000};
  config.n_trials = 200;
  config.master_seed = 11;
  config.workers = 0;
  const Report report = monte_carlo(config);
  REQUIRE(report.stopping_time.has_value());
  CHECK(report.stopping_time->median <= report.stopping_time->p95);
  CHECK(report.stopping_time->mean > 0.0);
  CHECK(report.stopped_rate == 1.0);
  CHECK(report.estimate >= 0.85);
  // Attached guarantees: explicit upper and the lower floor.
  REQUIRE(report.bound_values.size() == 2);
  CHECK(report.bound_values[0].formula_id == "fc_upper_explicit");
  CHECK(report.bound_values[1].formula_id == "fc_lower");
}

TEST_CASE("trial failures carry the trial index") {
  ExperimentConfig config;
  config.instance = make_instance({0.8}, 0.5, 0.0);
  config.eps = 1.0;
  config.setting = FbSetting{0};  // below the arm count: every trial throws
  config.n_trials = 3;
  config.master_seed = 1;
  try {
    (void)monte_carlo(config);
    FAIL("expected a runtime error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("trial 0") != std::string::npos);
  }
}

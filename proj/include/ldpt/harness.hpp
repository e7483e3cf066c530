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
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "ldpt/bounds.hpp"
#include "ldpt/env.hpp"
#include "ldpt/fixed_confidence.hpp"

namespace ldpt {

struct FbSetting {
  std::uint64_t budget = 0;
};

struct FcSetting {
  double delta = 0.1;
  std::uint64_t max_rounds = kDefaultFcMaxRounds;
};

struct ExperimentConfig {
  Instance instance;
  double eps = 1.0;
  std::variant<FbSetting, FcSetting> setting = FbSetting{};
  std::uint64_t n_trials = 1;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;  // 0 means hardware concurrency
};

struct StoppingTimeStats {
  double mean = 0.0;
  double median = 0.0;
  double p95 = 0.0;
};

struct Report {
  // Mean classification loss (fixed budget) or correct-set rate (fixed
  // confidence) over the trials.
  double estimate = 0.0;
  // sqrt(p (1-p) / n); NaN when n_trials == 1 (no degrees of freedom).
  double std_err = std::numeric_limits<double>::quiet_NaN();
  std::optional<StoppingTimeStats> stopping_time;  // fixed confidence only
  double stopped_rate = 1.0;  // fraction of runs that stopped before the cap
  std::vector<double> mean_pulls;    // per arm
  std::vector<BoundValue> bound_values;
  double wall_time_seconds = 0.0;
  std::uint64_t n_trials = 0;
  std::uint64_t master_seed = 0;
};

/// Runs n_trials independent trials, trial i on the stream derived from
/// (master_seed, i). Trials are distributed over a worker pool; aggregation
/// happens in trial-index order afterwards, so the report is bit-identical
/// for any worker count. A trial failure aborts the experiment with the
/// trial index attached to the error.
Report monte_carlo(const ExperimentConfig& config);

/// Enumeration cap: 2^budget response sequences.
inline constexpr std::uint64_t kOracleMaxBudget = 24;

/// Exact expected classification loss of the fixed-budget policy on a
/// Bernoulli instance, by exhaustive enumeration of all 2^budget privatized
/// response sequences. The policy trajectory is a deterministic function of
/// the response bits, and each bit is a coin with the pulled arm's
/// privatized mean, so the continuous reward randomness integrates out
/// exactly. Sequence probabilities are the products of per-pull response
/// likelihoods under the arms the replay actually pulls; contributions are
/// accumulated with compensated summation.
double exact_fb_oracle(const Instance& inst, double eps, std::uint64_t budget);

}  // namespace ldpt

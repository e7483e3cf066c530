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

#include "ldpt/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "ldpt/fixed_budget.hpp"
#include "ldpt/privacy.hpp"
#include "ldpt/rng.hpp"

namespace ldpt {

namespace {

// Kahan compensated accumulator; keeps 2^24-term sums accurate.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = total_ + y;
    compensation_ = (t - total_) - y;
    total_ = t;
  }
  double value() const { return total_; }

 private:
  double total_ = 0.0;
  double compensation_ = 0.0;
};

struct TrialRecord {
  std::uint8_t outcome = 0;  // FB: loss; FC: correctness
  std::uint8_t stopped = 1;
  std::uint64_t stopping_time = 0;
};

double quantile_sorted(const std::vector<std::uint64_t>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  // Nearest-rank with midpoint interpolation at exact .5 parity for the
  // median; deterministic regardless of platform.
  if (q == 0.5 && sorted.size() % 2 == 0) {
    const std::size_t hi = sorted.size() / 2;
    return (static_cast<double>(sorted[hi - 1]) +
            static_cast<double>(sorted[hi])) /
           2.0;
  }
  const double rank = q * static_cast<double>(sorted.size());
  std::size_t idx = static_cast<std::size_t>(std::ceil(rank));
  if (idx > 0) idx -= 1;
  if (idx >= sorted.size()) idx = sorted.size() - 1;
  return static_cast<double>(sorted[idx]);
}

void attach_bounds(const ExperimentConfig& config, Report& report) {
  const std::size_t num_arms = config.instance.num_arms();
  if (const auto* fb = std::get_if<FbSetting>(&config.setting)) {
    const PrivatizedView view =
        privatized_view(config.instance, config.eps, Setting::kFixedBudget);
    if (view.h_eps > 0.0 && fb->budget >= 2 * num_arms) {
      report.bound_values.push_back(
          fb_upper_bound(view.h_eps, num_arms, fb->budget));
    }
    if (view.h_eps > 0.0) {
      report.bound_values.push_back(
          fb_lower_bound(view.h_eps, config.eps, fb->budget));
    }
  } else {
    const auto& fc = std::get<FcSetting>(config.setting);
    const PrivatizedView view = privatized_view(config.instance, config.eps,
                                                Setting::kFixedConfidence);
    if (view.h_eps > 0.0) {
      FcUpperBound upper = fc_upper_bound(view.h_eps, num_arms, fc.delta);
      report.bound_values.push_back(upper.explicit_bound);
      report.bound_values.push_back(
          fc_lower_bound(view.h_eps, config.eps, fc.delta));
    }
  }
}

}  // namespace

Report monte_carlo(const ExperimentConfig& config) {
  if (config.n_trials == 0) {
    throw std::invalid_argument("n_trials must be >= 1");
  }
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = static_cast<std::size_t>(config.n_trials);
  const std::size_t num_arms = config.instance.num_arms();

  std::vector<TrialRecord> records(n);
  std::vector<std::uint64_t> pulls(n * num_arms, 0);

  const auto run_trial = [&](std::size_t trial) {
    Rng rng = derive_stream(config.master_seed, trial);
    TrialRecord rec;
    if (const auto* fb = std::get_if<FbSetting>(&config.setting)) {
      const FBResult result =
          run_fixed_budget(config.instance, config.eps, fb->budget, rng);
      rec.outcome = static_cast<std::uint8_t>(fb_loss(result, config.instance));
      rec.stopping_time = fb->budget;
      std::copy(result.pulls_final.begin(), result.pulls_final.end(),
                pulls.begin() + static_cast<std::ptrdiff_t>(trial * num_arms));
    } else {
      const auto& fc = std::get<FcSetting>(config.setting);
      const FCResult result = run_fixed_confidence(
          config.instance, config.eps, fc.delta, rng, fc.max_rounds);
      rec.outcome = fc_correct(result, config.instance) ? 1 : 0;
      rec.stopped = result.stopped ? 1 : 0;
      rec.stopping_time = result.stopping_time;
      std::copy(result.pulls_final.begin(), result.pulls_final.end(),
                pulls.begin() + static_cast<std::ptrdiff_t>(trial * num_arms));
    }
    records[trial] = rec;
  };

  unsigned workers = config.workers;
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, n));

  if (workers <= 1) {
    for (std::size_t trial = 0; trial < n; ++trial) {
      try {
        run_trial(trial);
      } catch (const std::exception& e) {
        throw std::runtime_error("trial " + std::to_string(trial) + ": " +
                                 e.what());
      }
    }
  } else {
    std::vector<std::thread> pool;
    std::vector<std::string> failures(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = static_cast<std::size_t>(w) * chunk;
      const std::size_t hi = std::min(lo + chunk, n);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi, w] {
        for (std::size_t trial = lo; trial < hi; ++trial) {
          try {
            run_trial(trial);
          } catch (const std::exception& e) {
            failures[w] = "trial " + std::to_string(trial) + ": " + e.what();
            return;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& f : failures) {
      if (!f.empty()) throw std::runtime_error(f);
    }
  }

  Report report;
  report.n_trials = config.n_trials;
  report.master_seed = config.master_seed;

  std::uint64_t outcome_sum = 0;
  std::uint64_t stopped_sum = 0;
  for (const auto& rec : records) {
    outcome_sum += rec.outcome;
    stopped_sum += rec.stopped;
  }
  const double n_d = static_cast<double>(n);
  report.estimate = static_cast<double>(outcome_sum) / n_d;
  if (n >= 2) {
    report.std_err =
        std::sqrt(report.estimate * (1.0 - report.estimate) / n_d);
  }
  report.stopped_rate = static_cast<double>(stopped_sum) / n_d;

  report.mean_pulls.assign(num_arms, 0.0);
  for (std::size_t arm = 0; arm < num_arms; ++arm) {
    std::uint64_t total = 0;
    for (std::size_t trial = 0; trial < n; ++trial) {
      total += pulls[trial * num_arms + arm];
    }
    report.mean_pulls[arm] = static_cast<double>(total) / n_d;
  }

  if (std::holds_alternative<FcSetting>(config.setting)) {
    std::vector<std::uint64_t> times(n);
    std::uint64_t total = 0;
    for (std::size_t trial = 0; trial < n; ++trial) {
      times[trial] = records[trial].stopping_time;
      total += times[trial];
    }
    std::sort(times.begin(), times.end());
    StoppingTimeStats stats;
    stats.mean = static_cast<double>(total) / n_d;
    stats.median = quantile_sorted(times, 0.5);
    stats.p95 = quantile_sorted(times, 0.95);
    report.stopping_time = stats;
  }

  attach_bounds(config, report);

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

double exact_fb_oracle(const Instance& inst, double eps,
                       std::uint64_t budget) {
  for (const auto& dist : inst.dists) {
    if (!dist.is_bernoulli()) {
      throw std::invalid_argument(
          "enumeration oracle requires Bernoulli arms");
    }
  }
  if (budget > kOracleMaxBudget) {
    throw std::invalid_argument("budget exceeds the enumeration cap of " +
                                std::to_string(kOracleMaxBudget));
  }
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("eps must be >= 0");
  }
  const PrivatizedView view =
      privatized_view(inst, eps, Setting::kFixedBudget);

  KahanSum expected_loss;
  KahanSum total_probability;  // accumulated for the internal sanity check
  const std::uint64_t sequences = std::uint64_t{1} << budget;
  for (std::uint64_t seq = 0; seq < sequences; ++seq) {
    double probability = 1.0;
    std::uint64_t cursor = 0;
    const FBResult replay =
        detail::run_fb_core(inst, view, budget, [&](std::size_t arm) {
          const bool bit = (seq >> cursor) & 1u;
          ++cursor;
          probability *= bit ? view.mu_eps[arm] : 1.0 - view.mu_eps[arm];
          return bit;
        });
    total_probability.add(probability);
    if (fb_loss(replay, inst) == 1) expected_loss.add(probability);
  }
  // All sequence probabilities must sum to 1; a drift here would mean the
  // replay consumed bits out of order.
  if (std::abs(total_probability.value() - 1.0) > 1e-9) {
    throw std::runtime_error("oracle probability mass does not sum to 1");
  }
  return expected_loss.value();
}

}  // namespace ldpt

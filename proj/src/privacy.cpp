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

#include "ldpt/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ldpt {

namespace {

void check_reward(double reward) {
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw std::invalid_argument("reward must lie in [0,1]");
  }
}

void check_eps(double eps) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("eps must be >= 0");
  }
}

// Response-probability grid r = 0, step, 2*step, ..., 1. The endpoint 1 is
// always included; the likelihood-ratio extremes sit at the endpoints.
std::vector<double> audit_grid(double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 1.0)) {
    throw std::invalid_argument("grid_step must lie in (0,1]");
  }
  std::vector<double> grid;
  for (double r = 0.0; r < 1.0; r += grid_step) grid.push_back(r);
  grid.push_back(1.0);
  return grid;
}

AuditReport ratios_from_probs(double eps, double grid_step,
                              const std::vector<double>& p_one,
                              double pass_slack) {
  AuditReport report;
  report.eps = eps;
  report.grid_step = grid_step;
  const std::size_t n = p_one.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      report.max_ratio_one =
          std::max(report.max_ratio_one, p_one[i] / p_one[j]);
      report.max_ratio_zero =
          std::max(report.max_ratio_zero, (1.0 - p_one[i]) / (1.0 - p_one[j]));
    }
  }
  const double budget = std::exp(std::min(eps, kEpsOverflowCap)) + pass_slack;
  report.pass =
      report.max_ratio_one <= budget && report.max_ratio_zero <= budget;
  return report;
}

}  // namespace

double bern_param(double reward, double eps) {
  check_reward(reward);
  check_eps(eps);
  if (eps <= kEpsOverflowCap) {
    const double e = std::exp(eps);
    return (reward * e + (1.0 - reward)) / (1.0 + e);
  }
  // e^eps would overflow; divide numerator and denominator by e^eps. The
  // rearranged form (r + (1-r) e^-eps) / (1 + e^-eps) is algebraically
  // identical and stays finite for any eps.
  const double em = std::exp(-eps);
  return (reward + (1.0 - reward) * em) / (1.0 + em);
}

double mean_contraction(double eps) {
  check_eps(eps);
  if (eps > kEpsOverflowCap) return 1.0;
  // expm1 keeps the numerator accurate for small eps.
  return std::expm1(eps) / (std::exp(eps) + 1.0);
}

double private_mean(double mu, double eps) {
  check_reward(mu);
  check_eps(eps);
  return 0.5 + (2.0 * mu - 1.0) * 0.5 * mean_contraction(eps);
}

bool privatize(double reward, double eps, Rng& rng) {
  return rng.flip(bern_param(reward, eps));
}

AuditReport dp_ratio_audit(double eps, double grid_step) {
  check_eps(eps);
  const std::vector<double> grid = audit_grid(grid_step);
  std::vector<double> p_one(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    p_one[i] = bern_param(grid[i], eps);
  }
  return ratios_from_probs(eps, grid_step, p_one, 1e-9);
}

AuditReport dp_ratio_audit_sampled(double eps, double grid_step,
                                   std::uint64_t samples_per_point, Rng& rng) {
  check_eps(eps);
  if (samples_per_point == 0) {
    throw std::invalid_argument("samples_per_point must be >= 1");
  }
  const std::vector<double> grid = audit_grid(grid_step);
  std::vector<double> p_one(grid.size());
  double max_stderr = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::uint64_t ones = 0;
    for (std::uint64_t s = 0; s < samples_per_point; ++s) {
      ones += privatize(grid[i], eps, rng) ? 1 : 0;
    }
    p_one[i] = static_cast<double>(ones) / static_cast<double>(samples_per_point);
    const double se = std::sqrt(p_one[i] * (1.0 - p_one[i]) /
                                static_cast<double>(samples_per_point));
    max_stderr = std::max(max_stderr, se);
  }
  // Empirical probabilities can stray from the analytic values by sampling
  // noise, which inflates ratios multiplicatively; grant the corresponding
  // absolute slack on top of e^eps.
  const double e_eps = std::exp(std::min(eps, kEpsOverflowCap));
  const double p_min = 1.0 / (1.0 + e_eps);
  const double relative_noise =
      6.0 * max_stderr / std::max(p_min - 3.0 * max_stderr, 1e-12);
  return ratios_from_probs(eps, grid_step, p_one, e_eps * relative_noise);
}

}  // namespace ldpt

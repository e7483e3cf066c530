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

#include "ldpt/rng.hpp"

namespace ldpt {

/// Largest eps routed through std::exp(eps) directly. Above the cap the
/// response probability is evaluated with an exponent-negated rearrangement
/// that cannot overflow (see bern_param in privacy.cpp).
inline constexpr double kEpsOverflowCap = 700.0;

/// Success probability of the binary randomized response to reward r:
/// (r e^eps + (1 - r)) / (1 + e^eps). Affine and nondecreasing in r, with
/// range [1/(1+e^eps), e^eps/(1+e^eps)].
///
/// Throws std::invalid_argument for r outside [0,1] or eps < 0.
double bern_param(double reward, double eps);

/// Slope of the privatized-mean map: (e^eps - 1) / (e^eps + 1) in [0, 1).
double mean_contraction(double eps);

/// Expected value of the randomized response when the input reward has mean
/// mu: 1/2 + (2 mu - 1)(e^eps - 1) / (2 (e^eps + 1)). Analytically equal to
/// bern_param(mu, eps); both closed forms are kept because each is the
/// natural shape for a different caller.
double private_mean(double mu, double eps);

/// One binary randomized response. Consumes exactly one uniform variate, so
/// trial replay from an identical stream is byte-deterministic.
bool privatize(double reward, double eps, Rng& rng);

struct AuditReport {
  double eps = 0.0;
  double grid_step = 0.0;
  double max_ratio_one = 0.0;   // max over grid pairs of P{B=1} ratios
  double max_ratio_zero = 0.0;  // max over grid pairs of P{B=0} ratios
  bool pass = false;            // both maxima <= e^eps + 1e-9
};

/// Analytic privacy audit: evaluates the exact response probabilities on a
/// grid over [0,1] and checks every pairwise likelihood ratio against
/// e^eps. The output law of the mechanism is known in closed form, so no
/// sampling is involved.
AuditReport dp_ratio_audit(double eps, double grid_step);

/// Sample-based variant of the audit for end-to-end smoke testing only:
/// estimates the response probabilities empirically before forming ratios.
/// The pass margin is widened to 3 binomial standard errors per grid point.
AuditReport dp_ratio_audit_sampled(double eps, double grid_step,
                                   std::uint64_t samples_per_point, Rng& rng);

}  // namespace ldpt

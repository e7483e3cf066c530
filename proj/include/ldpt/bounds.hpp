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
#include <cstdint>
#include <string>

namespace ldpt {

/// One evaluated closed-form guarantee. `value` is the raw expression;
/// `vacuous` is set when a probability bound exceeds 1 or a sample-size
/// bound is <= 0.
struct BoundValue {
  double value = 0.0;
  bool vacuous = false;
  std::string formula_id;

  /// Probability bounds only: the value clipped to [0, 1].
  double clamped() const {
    if (value < 0.0) return 0.0;
    return value > 1.0 ? 1.0 : value;
  }
};

/// Guaranteed misclassification probability of the fixed-budget policy:
/// exp(-T/(4 h_eps) + 2 K log(log T + 1)). Requires budget >= 2 K and
/// h_eps > 0; an infinite h_eps yields the vacuous value 1.
BoundValue fb_upper_bound(double h_eps, std::size_t num_arms,
                          std::uint64_t budget);

/// The guarantee statement and the final line of its derivation differ by a
/// factor 2 in the exponent; both are computable.
enum class FbLowerVariant { kStatement, kDerivationFinalLine };

/// Minimax loss floor for any private fixed-budget policy on the hard
/// family: (1/4) exp(-(8T/h_eps)(e^eps + 1)^2 min{4, e^{2 eps}}), with the
/// extra factor 2 under kDerivationFinalLine. Always in (0, 1/4].
BoundValue fb_lower_bound(double h_eps, double eps, std::uint64_t budget,
                          FbLowerVariant variant = FbLowerVariant::kStatement);

struct FcUpperBound {
  BoundValue explicit_bound;  // 499 h~ log(4 K h~ / delta) + 2 K
  double stylized = 0.0;      // h_eps log(4 K h_eps / delta)
  double h_tilde = 0.0;       // max{h_eps / 36, 1}
};

/// Sample-complexity guarantee of the fixed-confidence policy, in both the
/// explicit-constant and the stylized form.
FcUpperBound fc_upper_bound(double h_eps, std::size_t num_arms, double delta);

/// Expected-sample-count floor for any delta-correct private policy:
/// h_eps max{0, (1 - delta) log(1/delta) - log 2} /
/// (2 min{4, e^{2 eps}} (e^eps + 1)^2). Clamped at 0 (vacuous) when the
/// numerator is negative; +inf when h_eps is infinite.
BoundValue fc_lower_bound(double h_eps, double eps, double delta);

/// Binary relative entropy p log(p/q) + (1-p) log((1-p)/(1-q)) on [0,1]^2,
/// with the 0 log 0 = 0 convention; +inf when q in {0,1} disagrees with p.
double bernoulli_kl(double p, double q);

/// Quadratic stand-in 2 gap^2 for the divergence between the two symmetric
/// Bernoulli laws Bernoulli(1/2 -+ gap/2), compared against the exact value
/// gap log((1+gap)/(1-gap)).
struct KlSurrogate {
  double value = 0.0;           // 2 gap^2
  double exact = 0.0;           // exact symmetric divergence
  bool dominates_exact = false; // value >= exact
};

KlSurrogate quadratic_kl_surrogate(double gap);

/// Testing-error floor (1/4) exp(-kl) from two hypotheses at divergence kl.
double bretagnolle_huber(double kl);

/// Contraction constant bounding the divergence between observation laws
/// through any eps-private channel: 2 min{4, e^{2 eps}} (e^eps - 1)^2.
double private_kl_factor(double eps);

}  // namespace ldpt

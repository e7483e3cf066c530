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

#include "ldpt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldpt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1)");
  }
}

void check_eps(double eps) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("eps must be >= 0");
  }
}

// min{4, e^{2 eps}}; branches on the exponent so large eps never overflows.
double capped_exp_2eps(double eps) {
  const double two_eps = 2.0 * eps;
  return two_eps >= std::log(4.0) ? 4.0 : std::exp(two_eps);
}

}  // namespace

BoundValue fb_upper_bound(double h_eps, std::size_t num_arms,
                          std::uint64_t budget) {
  if (!(h_eps > 0.0)) {
    throw std::invalid_argument("h_eps must be > 0");
  }
  if (num_arms == 0) {
    throw std::invalid_argument("num_arms must be >= 1");
  }
  if (budget < 2 * num_arms) {
    throw std::invalid_argument("budget must be >= 2 * num_arms");
  }
  BoundValue bound;
  bound.formula_id = "fb_upper";
  if (std::isinf(h_eps)) {
    bound.value = 1.0;
    bound.vacuous = true;
    return bound;
  }
  const double t = static_cast<double>(budget);
  const double k = static_cast<double>(num_arms);
  bound.value = std::exp(-t / (4.0 * h_eps) +
                         2.0 * k * std::log(std::log(t) + 1.0));
  bound.vacuous = bound.value > 1.0;
  return bound;
}

BoundValue fb_lower_bound(double h_eps, double eps, std::uint64_t budget,
                          FbLowerVariant variant) {
  if (!(h_eps > 0.0)) {
    throw std::invalid_argument("h_eps must be > 0");
  }
  check_eps(eps);
  BoundValue bound;
  bound.formula_id = variant == FbLowerVariant::kStatement
                         ? "fb_lower"
                         : "fb_lower_final_line";
  const double e_eps = std::exp(std::min(eps, 700.0));
  double exponent = (8.0 * static_cast<double>(budget) / h_eps) *
                    (e_eps + 1.0) * (e_eps + 1.0) * capped_exp_2eps(eps);
  if (variant == FbLowerVariant::kDerivationFinalLine) exponent *= 2.0;
  bound.value = 0.25 * std::exp(-exponent);
  bound.vacuous = false;  // always a valid probability in (0, 1/4]
  return bound;
}

FcUpperBound fc_upper_bound(double h_eps, std::size_t num_arms, double delta) {
  if (!(h_eps > 0.0)) {
    throw std::invalid_argument("h_eps must be > 0");
  }
  if (num_arms == 0) {
    throw std::invalid_argument("num_arms must be >= 1");
  }
  check_delta(delta);
  FcUpperBound out;
  const double k = static_cast<double>(num_arms);
  out.h_tilde = std::max(h_eps / 36.0, 1.0);
  out.explicit_bound.formula_id = "fc_upper_explicit";
  out.explicit_bound.value =
      499.0 * out.h_tilde * std::log(4.0 * k * out.h_tilde / delta) + 2.0 * k;
  out.explicit_bound.vacuous = !(out.explicit_bound.value > 0.0);
  out.stylized = h_eps * std::log(4.0 * k * h_eps / delta);
  return out;
}

BoundValue fc_lower_bound(double h_eps, double eps, double delta) {
  if (!(h_eps > 0.0)) {
    throw std::invalid_argument("h_eps must be > 0");
  }
  check_eps(eps);
  check_delta(delta);
  BoundValue bound;
  bound.formula_id = "fc_lower";
  const double numerator =
      (1.0 - delta) * std::log(1.0 / delta) - std::log(2.0);
  if (numerator <= 0.0) {
    bound.value = 0.0;
    bound.vacuous = true;
    return bound;
  }
  const double e_eps = std::exp(std::min(eps, 700.0));
  const double denominator =
      2.0 * capped_exp_2eps(eps) * (e_eps + 1.0) * (e_eps + 1.0);
  bound.value = h_eps * numerator / denominator;  // +inf when h_eps is +inf
  bound.vacuous = !(bound.value > 0.0);
  return bound;
}

double bernoulli_kl(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("kl arguments must lie in [0,1]");
  }
  if (p == q) return 0.0;
  double kl = 0.0;
  if (p > 0.0) {
    if (q == 0.0) return kInf;
    kl += p * std::log(p / q);
  }
  if (p < 1.0) {
    if (q == 1.0) return kInf;
    kl += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  }
  return kl;
}

KlSurrogate quadratic_kl_surrogate(double gap) {
  if (!(gap >= 0.0 && gap < 1.0)) {
    throw std::invalid_argument("gap must lie in [0,1)");
  }
  KlSurrogate out;
  out.value = 2.0 * gap * gap;
  out.exact = gap == 0.0 ? 0.0 : gap * std::log((1.0 + gap) / (1.0 - gap));
  out.dominates_exact = out.value >= out.exact;
  return out;
}

double bretagnolle_huber(double kl) {
  if (!(kl >= 0.0)) {
    throw std::invalid_argument("kl must be >= 0");
  }
  return 0.25 * std::exp(-kl);
}

double private_kl_factor(double eps) {
  check_eps(eps);
  const double shift = std::expm1(std::min(eps, 700.0));
  return 2.0 * capped_exp_2eps(eps) * shift * shift;
}

}  // namespace ldpt

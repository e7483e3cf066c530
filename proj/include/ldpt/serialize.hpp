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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldpt/bounds.hpp"
#include "ldpt/env.hpp"
#include "ldpt/harness.hpp"
#include "ldpt/privacy.hpp"

namespace ldpt {

/// Raised on malformed or out-of-domain configuration documents; the message
/// names the offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message)
      : std::runtime_error(message) {}
};

/// JSON has no non-finite numbers; infinities and NaN are serialized as the
/// strings "inf", "-inf" and "nan".
nlohmann::json json_real(double value);
double real_from_json(const nlohmann::json& j, const std::string& field);

// Canonical instance document: {means, threshold, tolerance, dists?}.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json audit_report_to_json(const AuditReport& report);
AuditReport audit_report_from_json(const nlohmann::json& j);

nlohmann::json bound_value_to_json(const BoundValue& bound);

nlohmann::json report_to_json(const Report& report);

enum class SweepAxis { kBudget, kEps, kDelta };

struct SweepSpec {
  SweepAxis axis = SweepAxis::kBudget;
  std::vector<double> values;  // non-empty, strictly increasing
};

/// One experiment document as consumed by the command-line driver.
struct CliConfig {
  ExperimentConfig base;
  std::optional<SweepSpec> sweep;
  std::optional<std::string> output;
};

/// Parses and validates a full experiment document. Throws ConfigError with
/// the offending field in the message.
CliConfig cli_config_from_json(const nlohmann::json& j);
nlohmann::json cli_config_to_json(const CliConfig& config);

}  // namespace ldpt

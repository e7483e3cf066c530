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

#include "ldpt/serialize.hpp"

#include <cmath>
#include <limits>

namespace ldpt {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const std::string& field,
                          const std::string& context) {
  if (!j.is_object() || !j.contains(field)) {
    throw ConfigError(context + ": missing field '" + field + "'");
  }
  return j.at(field);
}

double number_field(const json& j, const std::string& field,
                    const std::string& context) {
  const json& v = require_field(j, field, context);
  if (!v.is_number()) {
    throw ConfigError(context + "." + field + ": expected a number");
  }
  return v.get<double>();
}

std::uint64_t uint_field(const json& j, const std::string& field,
                         const std::string& context,
                         std::optional<std::uint64_t> fallback = {}) {
  if (!j.contains(field)) {
    if (fallback) return *fallback;
    throw ConfigError(context + ": missing field '" + field + "'");
  }
  const json& v = j.at(field);
  // Non-negative literals parse as unsigned, but documents assembled in
  // memory may carry them in the signed representation.
  const bool negative_signed =
      v.is_number_integer() && !v.is_number_unsigned() &&
      v.get<std::int64_t>() < 0;
  if (!v.is_number_integer() || negative_signed) {
    throw ConfigError(context + "." + field +
                      ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

json json_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double real_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ConfigError(field + ": expected a real number");
}

json instance_to_json(const Instance& inst) {
  json j;
  j["means"] = inst.means;
  j["threshold"] = inst.threshold;
  j["tolerance"] = inst.tolerance;
  bool all_bernoulli = true;
  for (const auto& dist : inst.dists) {
    if (!dist.is_bernoulli()) all_bernoulli = false;
  }
  if (!all_bernoulli) {
    json dists = json::array();
    for (const auto& dist : inst.dists) {
      if (dist.is_bernoulli()) {
        dists.push_back({{"kind", "bernoulli"}});
      } else {
        dists.push_back({{"kind", "discrete"},
                         {"support", dist.support()},
                         {"probs", dist.probs()}});
      }
    }
    j["dists"] = dists;
  }
  return j;
}

Instance instance_from_json(const json& j) {
  const json& means_json = require_field(j, "means", "instance");
  if (!means_json.is_array() || means_json.empty()) {
    throw ConfigError("instance.means: expected a non-empty array");
  }
  std::vector<double> means;
  for (const auto& m : means_json) {
    if (!m.is_number()) {
      throw ConfigError("instance.means: expected numbers");
    }
    means.push_back(m.get<double>());
  }
  const double threshold = number_field(j, "threshold", "instance");
  const double tolerance = number_field(j, "tolerance", "instance");

  try {
    if (!j.contains("dists")) {
      return make_instance(std::move(means), threshold, tolerance);
    }
    const json& dists_json = j.at("dists");
    if (!dists_json.is_array() || dists_json.size() != means.size()) {
      throw ConfigError("instance.dists: expected one entry per arm");
    }
    std::vector<RewardDist> dists;
    for (std::size_t i = 0; i < means.size(); ++i) {
      const json& d = dists_json[i];
      const std::string kind =
          require_field(d, "kind", "instance.dists").get<std::string>();
      if (kind == "bernoulli") {
        dists.push_back(RewardDist::bernoulli(means[i]));
      } else if (kind == "discrete") {
        dists.push_back(RewardDist::discrete(
            require_field(d, "support", "instance.dists")
                .get<std::vector<double>>(),
            require_field(d, "probs", "instance.dists")
                .get<std::vector<double>>()));
      } else {
        throw ConfigError("instance.dists.kind: unknown kind '" + kind + "'");
      }
    }
    return make_instance(std::move(means), threshold, tolerance,
                         std::move(dists));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("instance: ") + e.what());
  }
}

json audit_report_to_json(const AuditReport& report) {
  return json{{"eps", report.eps},
              {"grid_step", report.grid_step},
              {"max_ratio_one", json_real(report.max_ratio_one)},
              {"max_ratio_zero", json_real(report.max_ratio_zero)},
              {"pass", report.pass}};
}

AuditReport audit_report_from_json(const json& j) {
  AuditReport report;
  report.eps = number_field(j, "eps", "audit");
  report.grid_step = number_field(j, "grid_step", "audit");
  report.max_ratio_one =
      real_from_json(require_field(j, "max_ratio_one", "audit"),
                     "audit.max_ratio_one");
  report.max_ratio_zero =
      real_from_json(require_field(j, "max_ratio_zero", "audit"),
                     "audit.max_ratio_zero");
  report.pass = require_field(j, "pass", "audit").get<bool>();
  return report;
}

json bound_value_to_json(const BoundValue& bound) {
  return json{{"formula_id", bound.formula_id},
              {"value", json_real(bound.value)},
              {"vacuous", bound.vacuous}};
}

json report_to_json(const Report& report) {
  json j;
  j["estimate"] = report.estimate;
  j["stderr"] = json_real(report.std_err);
  j["stopped_rate"] = report.stopped_rate;
  j["mean_pulls"] = report.mean_pulls;
  j["n_trials"] = report.n_trials;
  j["master_seed"] = report.master_seed;
  j["wall_time_seconds"] = report.wall_time_seconds;
  if (report.stopping_time) {
    j["stopping_time"] = {{"mean", report.stopping_time->mean},
                          {"median", report.stopping_time->median},
                          {"p95", report.stopping_time->p95}};
  }
  json bounds = json::array();
  for (const auto& b : report.bound_values) {
    bounds.push_back(bound_value_to_json(b));
  }
  j["bound_values"] = bounds;
  return j;
}

CliConfig cli_config_from_json(const json& j) {
  CliConfig config;
  config.base.instance =
      instance_from_json(require_field(j, "instance", "config"));
  config.base.eps = number_field(j, "eps", "config");
  if (!(config.base.eps >= 0.0)) {
    throw ConfigError("config.eps: must be >= 0");
  }

  const json& setting = require_field(j, "setting", "config");
  const std::string kind =
      require_field(setting, "kind", "config.setting").get<std::string>();
  if (kind == "fixed_budget") {
    FbSetting fb;
    fb.budget = uint_field(setting, "T", "config.setting");
    config.base.setting = fb;
  } else if (kind == "fixed_confidence") {
    FcSetting fc;
    fc.delta = number_field(setting, "delta", "config.setting");
    if (!(fc.delta > 0.0 && fc.delta < 1.0)) {
      throw ConfigError("config.setting.delta: must lie in the open (0,1)");
    }
    fc.max_rounds = uint_field(setting, "max_rounds", "config.setting",
                               kDefaultFcMaxRounds);
    if (fc.max_rounds < config.base.instance.num_arms()) {
      throw ConfigError(
          "config.setting.max_rounds: must be >= the number of arms");
    }
    config.base.setting = fc;
  } else {
    throw ConfigError("config.setting.kind: expected 'fixed_budget' or "
                      "'fixed_confidence'");
  }

  config.base.n_trials = uint_field(j, "n_trials", "config");
  if (config.base.n_trials == 0) {
    throw ConfigError("config.n_trials: must be >= 1");
  }
  config.base.master_seed = uint_field(j, "master_seed", "config", 0);
  config.base.workers =
      static_cast<unsigned>(uint_field(j, "workers", "config", 0));

  if (j.contains("sweep")) {
    const json& sweep = j.at("sweep");
    SweepSpec spec;
    const std::string axis =
        require_field(sweep, "axis", "config.sweep").get<std::string>();
    if (axis == "T") {
      spec.axis = SweepAxis::kBudget;
    } else if (axis == "eps") {
      spec.axis = SweepAxis::kEps;
    } else if (axis == "delta") {
      spec.axis = SweepAxis::kDelta;
    } else {
      throw ConfigError("config.sweep.axis: expected 'T', 'eps' or 'delta'");
    }
    const json& values = require_field(sweep, "values", "config.sweep");
    if (!values.is_array() || values.empty()) {
      throw ConfigError("config.sweep.values: expected a non-empty array");
    }
    for (const auto& v : values) {
      if (!v.is_number()) {
        throw ConfigError("config.sweep.values: expected numbers");
      }
      spec.values.push_back(v.get<double>());
    }
    for (std::size_t i = 1; i < spec.values.size(); ++i) {
      if (!(spec.values[i] > spec.values[i - 1])) {
        throw ConfigError(
            "config.sweep.values: must be strictly increasing");
      }
    }
    config.sweep = spec;
  }

  if (j.contains("output")) {
    config.output = j.at("output").get<std::string>();
  }
  return config;
}

json cli_config_to_json(const CliConfig& config) {
  json j;
  j["instance"] = instance_to_json(config.base.instance);
  j["eps"] = config.base.eps;
  if (const auto* fb = std::get_if<FbSetting>(&config.base.setting)) {
    j["setting"] = {{"kind", "fixed_budget"}, {"T", fb->budget}};
  } else {
    const auto& fc = std::get<FcSetting>(config.base.setting);
    j["setting"] = {{"kind", "fixed_confidence"},
                    {"delta", fc.delta},
                    {"max_rounds", fc.max_rounds}};
  }
  j["n_trials"] = config.base.n_trials;
  j["master_seed"] = config.base.master_seed;
  j["workers"] = config.base.workers;
  if (config.sweep) {
    const char* axis = config.sweep->axis == SweepAxis::kBudget ? "T"
                       : config.sweep->axis == SweepAxis::kEps  ? "eps"
                                                                : "delta";
    j["sweep"] = {{"axis", axis}, {"values", config.sweep->values}};
  }
  if (config.output) j["output"] = *config.output;
  return j;
}

}  // namespace ldpt

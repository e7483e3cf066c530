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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldpt/bounds.hpp"
#include "ldpt/csv.hpp"
#include "ldpt/env.hpp"
#include "ldpt/harness.hpp"
#include "ldpt/privacy.hpp"
#include "ldpt/serialize.hpp"

namespace {

using nlohmann::json;

// Exit-code contract: 0 success, 1 runtime failure, 2 usage/config error.
constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

ldpt::CliConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ldpt::ConfigError("cannot open config file '" + path + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ldpt::ConfigError(std::string("config is not valid JSON: ") +
                            e.what());
  }
  return ldpt::cli_config_from_json(j);
}

// Only master_seed and workers may be overridden from the environment.
void apply_env_overrides(ldpt::ExperimentConfig& config) {
  if (const char* seed = std::getenv("LDPT_MASTER_SEED")) {
    try {
      config.master_seed = std::stoull(seed);
    } catch (const std::exception&) {
      throw ldpt::ConfigError("LDPT_MASTER_SEED: not a valid integer");
    }
  }
  if (const char* workers = std::getenv("LDPT_WORKERS")) {
    try {
      config.workers = static_cast<unsigned>(std::stoul(workers));
    } catch (const std::exception&) {
      throw ldpt::ConfigError("LDPT_WORKERS: not a valid integer");
    }
  }
}

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path);
  if (!out) {
    throw std::runtime_error("cannot open output file '" + *path + "'");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing output file '" + *path + "'");
  }
}

std::optional<std::string> pick_output(const ldpt::CliConfig& config,
                                       const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  return config.output;
}

double bound_or_nan(const ldpt::Report& report, const std::string& id) {
  for (const auto& b : report.bound_values) {
    if (b.formula_id == id) return b.value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::uint64_t budget_from_axis(double value) {
  if (!(value >= 0.0) || value != std::floor(value)) {
    throw ldpt::ConfigError(
        "config.sweep.values: budgets must be non-negative integers");
  }
  return static_cast<std::uint64_t>(value);
}

void check_fb_budget(std::uint64_t budget, std::size_t num_arms) {
  if (budget < num_arms) {
    throw ldpt::ConfigError(
        "config.setting.T: budget " + std::to_string(budget) +
        " is below the number of arms K=" + std::to_string(num_arms));
  }
  if (budget < 2 * num_arms) {
    std::cerr << "warning: budget T=" << budget
              << " is below the guaranteed regime; the loss bound requires "
                 "T >= 2K = "
              << 2 * num_arms << "\n";
  }
}

int cmd_fixed_budget(const std::string& config_path,
                     const std::string& output_flag) {
  ldpt::CliConfig config = load_config(config_path);
  apply_env_overrides(config.base);
  if (!std::holds_alternative<ldpt::FbSetting>(config.base.setting)) {
    throw ldpt::ConfigError(
        "config.setting.kind: this command requires 'fixed_budget'");
  }
  if (config.sweep && config.sweep->axis == ldpt::SweepAxis::kDelta) {
    throw ldpt::ConfigError(
        "config.sweep.axis: 'delta' does not apply to the fixed-budget "
        "setting");
  }

  std::vector<double> axis_values;
  if (config.sweep) {
    axis_values = config.sweep->values;
  } else if (std::holds_alternative<ldpt::FbSetting>(config.base.setting)) {
    axis_values = {static_cast<double>(
        std::get<ldpt::FbSetting>(config.base.setting).budget)};
  }

  ldpt::CsvTable table;
  table.header = {"axis_value", "estimate",  "stderr", "ub_theorem1",
                  "lb_theorem2", "n_trials", "seed"};
  for (double axis : axis_values) {
    ldpt::ExperimentConfig run = config.base;
    if (!config.sweep || config.sweep->axis == ldpt::SweepAxis::kBudget) {
      std::get<ldpt::FbSetting>(run.setting).budget = budget_from_axis(axis);
    } else {
      if (!(axis >= 0.0)) {
        throw ldpt::ConfigError("config.sweep.values: eps must be >= 0");
      }
      run.eps = axis;
    }
    check_fb_budget(std::get<ldpt::FbSetting>(run.setting).budget,
                    run.instance.num_arms());
    const ldpt::Report report = ldpt::monte_carlo(run);
    table.rows.push_back({ldpt::format_double(axis),
                          ldpt::format_double(report.estimate),
                          ldpt::format_double(report.std_err),
                          ldpt::format_double(bound_or_nan(report, "fb_upper")),
                          ldpt::format_double(bound_or_nan(report, "fb_lower")),
                          std::to_string(report.n_trials),
                          std::to_string(report.master_seed)});
  }

  std::ostringstream out;
  ldpt::write_csv(out, table);
  emit(out.str(), pick_output(config, output_flag));
  return kExitOk;
}

int cmd_fixed_confidence(const std::string& config_path,
                         const std::string& output_flag) {
  ldpt::CliConfig config = load_config(config_path);
  apply_env_overrides(config.base);
  if (!std::holds_alternative<ldpt::FcSetting>(config.base.setting)) {
    throw ldpt::ConfigError(
        "config.setting.kind: this command requires 'fixed_confidence'");
  }
  if (config.sweep && config.sweep->axis == ldpt::SweepAxis::kBudget) {
    throw ldpt::ConfigError(
        "config.sweep.axis: 'T' does not apply to the fixed-confidence "
        "setting");
  }

  std::vector<double> axis_values;
  if (config.sweep) {
    axis_values = config.sweep->values;
  } else {
    axis_values = {std::get<ldpt::FcSetting>(config.base.setting).delta};
  }

  ldpt::CsvTable table;
  table.header = {"axis_value", "correct_rate", "stderr",   "mean_T",
                  "median_T",   "p95_T",        "ub_499",   "lb_theorem4",
                  "n_trials",   "seed"};
  bool cap_exhausted = false;
  std::vector<double> stopped_rates;
  for (double axis : axis_values) {
    ldpt::ExperimentConfig run = config.base;
    if (!config.sweep || config.sweep->axis == ldpt::SweepAxis::kDelta) {
      if (!(axis > 0.0 && axis < 1.0)) {
        throw ldpt::ConfigError(
            "config.sweep.values: delta must lie in the open (0,1)");
      }
      std::get<ldpt::FcSetting>(run.setting).delta = axis;
    } else {
      if (!(axis >= 0.0)) {
        throw ldpt::ConfigError("config.sweep.values: eps must be >= 0");
      }
      run.eps = axis;
    }
    const ldpt::Report report = ldpt::monte_carlo(run);
    const auto& stats = report.stopping_time.value();
    table.rows.push_back(
        {ldpt::format_double(axis), ldpt::format_double(report.estimate),
         ldpt::format_double(report.std_err), ldpt::format_double(stats.mean),
         ldpt::format_double(stats.median), ldpt::format_double(stats.p95),
         ldpt::format_double(bound_or_nan(report, "fc_upper_explicit")),
         ldpt::format_double(bound_or_nan(report, "fc_lower")),
         std::to_string(report.n_trials), std::to_string(report.master_seed)});
    stopped_rates.push_back(report.stopped_rate);
    if (1.0 - report.stopped_rate > 0.01) {
      cap_exhausted = true;
      std::cerr << "warning: max_rounds exhausted in "
                << 100.0 * (1.0 - report.stopped_rate)
                << "% of trials at axis_value=" << ldpt::format_double(axis)
                << "\n";
    }
  }
  if (cap_exhausted) {
    table.header.push_back("stopped_rate");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      table.rows[i].push_back(ldpt::format_double(stopped_rates[i]));
    }
  }

  std::ostringstream out;
  ldpt::write_csv(out, table);
  emit(out.str(), pick_output(config, output_flag));
  return kExitOk;
}

json bound_entry(const ldpt::BoundValue& bound, const json& inputs,
                 const std::string& variant) {
  json j = ldpt::bound_value_to_json(bound);
  j["inputs"] = inputs;
  j["variant"] = variant;
  return j;
}

int cmd_bounds(const std::optional<double>& h_eps_flag,
               const std::vector<double>& means, double threshold,
               double tolerance, double eps, std::size_t arms_flag,
               std::uint64_t budget, double delta) {
  double h_eps_fb = 0.0;
  double h_eps_fc = 0.0;
  std::size_t num_arms = 0;
  if (h_eps_flag) {
    if (arms_flag == 0) {
      throw std::invalid_argument("--arms is required with --h-eps");
    }
    h_eps_fb = h_eps_fc = *h_eps_flag;
    num_arms = arms_flag;
  } else {
    if (means.empty()) {
      throw std::invalid_argument("provide either --h-eps or --means");
    }
    const ldpt::Instance inst =
        ldpt::make_instance(means, threshold, tolerance);
    h_eps_fb =
        ldpt::privatized_view(inst, eps, ldpt::Setting::kFixedBudget).h_eps;
    h_eps_fc = ldpt::privatized_view(inst, eps, ldpt::Setting::kFixedConfidence)
                   .h_eps;
    num_arms = inst.num_arms();
  }

  const json fb_inputs = {{"h_eps", ldpt::json_real(h_eps_fb)},
                          {"K", num_arms},
                          {"T", budget},
                          {"eps", eps}};
  const json fc_inputs = {{"h_eps", ldpt::json_real(h_eps_fc)},
                          {"K", num_arms},
                          {"delta", delta},
                          {"eps", eps}};

  json out;
  out["fb_upper"] = bound_entry(
      ldpt::fb_upper_bound(h_eps_fb, num_arms, budget), fb_inputs,
      "statement");
  out["fb_lower"] = bound_entry(
      ldpt::fb_lower_bound(h_eps_fb, eps, budget), fb_inputs, "statement");
  out["fb_lower_final_line"] = bound_entry(
      ldpt::fb_lower_bound(h_eps_fb, eps, budget,
                           ldpt::FbLowerVariant::kDerivationFinalLine),
      fb_inputs, "derivation_final_line");
  const ldpt::FcUpperBound fc_upper =
      ldpt::fc_upper_bound(h_eps_fc, num_arms, delta);
  json fc_upper_json =
      bound_entry(fc_upper.explicit_bound, fc_inputs, "explicit_constant");
  fc_upper_json["stylized"] = ldpt::json_real(fc_upper.stylized);
  fc_upper_json["h_tilde"] = ldpt::json_real(fc_upper.h_tilde);
  out["fc_upper"] = fc_upper_json;
  out["fc_lower"] = bound_entry(ldpt::fc_lower_bound(h_eps_fc, eps, delta),
                                fc_inputs, "statement");

  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_audit(double eps, double grid_step) {
  const ldpt::AuditReport report = ldpt::dp_ratio_audit(eps, grid_step);
  std::cout << ldpt::audit_report_to_json(report).dump(2) << "\n";
  return report.pass ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thresholding-bandit simulator under local differential "
               "privacy: experiment sweeps, guarantee evaluation, and an "
               "analytic privacy audit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_flag;

  auto* fb = app.add_subcommand(
      "fixed-budget", "Monte Carlo sweep of the fixed-budget policy (CSV)");
  fb->add_option("config", config_path, "experiment config (JSON)")
      ->required();
  fb->add_option("-o,--output", output_flag,
                 "output file (defaults to config 'output' or stdout)");

  auto* fc = app.add_subcommand(
      "fixed-confidence",
      "Monte Carlo sweep of the fixed-confidence policy (CSV)");
  fc->add_option("config", config_path, "experiment config (JSON)")
      ->required();
  fc->add_option("-o,--output", output_flag,
                 "output file (defaults to config 'output' or stdout)");

  auto* bounds = app.add_subcommand(
      "bounds", "evaluate all four performance guarantees (JSON)");
  std::optional<double> h_eps_flag;
  std::vector<double> means;
  double threshold = 0.5;
  double tolerance = 0.0;
  double eps = 0.0;
  std::size_t arms_flag = 0;
  std::uint64_t budget = 0;
  double delta = 0.1;
  bounds->add_option("--h-eps", h_eps_flag,
                     "privatized complexity (skips instance computation)");
  bounds->add_option("--means", means, "instance means in [0,1]");
  bounds->add_option("--threshold", threshold, "threshold in [0,1]");
  bounds->add_option("--tolerance", tolerance, "tolerance >= 0");
  bounds->add_option("--eps", eps, "privacy parameter >= 0")->required();
  bounds->add_option("--arms", arms_flag, "arm count (with --h-eps)");
  bounds->add_option("--budget", budget, "fixed-budget pull count")
      ->required();
  bounds->add_option("--delta", delta, "fixed-confidence failure rate")
      ->required();

  auto* audit = app.add_subcommand(
      "audit", "analytic likelihood-ratio audit of the response mechanism");
  double audit_eps = 0.0;
  double grid_step = 0.01;
  audit->add_option("--eps", audit_eps, "privacy parameter >= 0")->required();
  audit->add_option("--grid-step", grid_step, "reward grid step in (0,1]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (fb->parsed()) return cmd_fixed_budget(config_path, output_flag);
    if (fc->parsed()) return cmd_fixed_confidence(config_path, output_flag);
    if (bounds->parsed()) {
      return cmd_bounds(h_eps_flag, means, threshold, tolerance, eps,
                        arms_flag, budget, delta);
    }
    if (audit->parsed()) return cmd_audit(audit_eps, grid_step);
  } catch (const ldpt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}

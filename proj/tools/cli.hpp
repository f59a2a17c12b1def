//
// Copyright 2026 The Bounded Laplace Authors
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
//

#ifndef BOUNDED_LAPLACE_TOOLS_CLI_HPP_
#define BOUNDED_LAPLACE_TOOLS_CLI_HPP_

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bounded_laplace/bounded_laplace.hpp"
#include "json.hpp"

namespace bounded_laplace::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsageError = 2 };

// 17 significant digits: lossless for doubles.
inline std::string format_number(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

struct CliConfig {
  std::string command;
  double epsilon = 1.0;
  double delta = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  double sensitivity = 1.0;
  std::optional<double> b;
  std::optional<double> q;
  std::size_t n = 1;
  std::optional<std::uint64_t> seed;
  double tol = 1e-12;
  std::size_t max_iter = 200;
  std::string format = "text";
  std::string sampler = "inverse";

  // verify
  std::size_t q_grid = 200;
  std::size_t set_grid = 200;
  double slack = 1e-9;
  int intervals = 1;
  std::size_t derivative_grid = 64;
  std::size_t samples = 1000000;
  std::size_t bins = 50;

  // sweep
  double width = 1.0;
  double sens_min = 1e-3;
  double sens_max = 1.0;
  std::size_t sens_count = 50;
  double eps_min = 1e-2;
  double eps_max = 10.0;
  std::size_t eps_count = 50;

  CalibrationOptions calibration() const { return {tol, max_iter}; }
  OutputDomain domain() const { return {lower, upper, sensitivity}; }
  PrivacyBudget budget() const { return {epsilon, delta}; }
};

namespace detail {

inline std::uint64_t resolve_seed(const CliConfig& config, std::ostream& err) {
  if (config.seed) return *config.seed;
  std::random_device device;
  const std::uint64_t seed =
      (std::uint64_t(device()) << 32) | std::uint64_t(device());
  err << "seed: " << seed << '\n';
  return seed;
}

inline nlohmann::ordered_json report_json(const CalibrationReport& r) {
  nlohmann::ordered_json j;
  j["b0"] = r.b0;
  j["f_b0"] = r.f_b0;
  j["b_star"] = r.b_star;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  j["effective_epsilon"] = r.effective_epsilon;
  return j;
}

inline int cmd_calibrate(const CliConfig& config, std::ostream& out) {
  const auto report =
      calibrate(config.domain(), config.budget(), config.calibration());
  if (config.format == "json") {
    out << report_json(report).dump(2) << '\n';
  } else if (config.format == "csv") {
    out << "b0,f_b0,b_star,residual,iterations,effective_epsilon\n"
        << format_number(report.b0) << ',' << format_number(report.f_b0)
        << ',' << format_number(report.b_star) << ','
        << format_number(report.residual) << ',' << report.iterations << ','
        << format_number(report.effective_epsilon) << '\n';
  } else {
    out << "b0 = " << format_number(report.b0) << '\n'
        << "f_b0 = " << format_number(report.f_b0) << '\n'
        << "b_star = " << format_number(report.b_star) << '\n'
        << "residual = " << format_number(report.residual) << '\n'
        << "iterations = " << report.iterations << '\n'
        << "effective_epsilon = " << format_number(report.effective_epsilon)
        << '\n';
  }
  return kSuccess;
}

inline double resolve_scale(const CliConfig& config) {
  if (config.b) {
    require_positive_scale(*config.b);
    return *config.b;
  }
  return calibrate(config.domain(), config.budget(), config.calibration())
      .b_star;
}

inline int cmd_sample(const CliConfig& config, std::ostream& out,
                      std::ostream& err) {
  const OutputDomain domain = config.domain();
  if (!config.q) throw InvalidArgument("--q is required for sample");
  domain.require_contains(*config.q);
  if (config.n == 0) throw InvalidArgument("--n must be positive");
  const Sampler sampler = parse_sampler(config.sampler);
  const BoundedLaplaceMechanism mech(domain, config.budget(),
                                     resolve_scale(config));
  DefaultRandomSource rng(resolve_seed(config, err));

  std::vector<double> values;
  values.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    values.push_back(mech.sample(*config.q, rng, sampler));
  }
  if (config.format == "json") {
    nlohmann::ordered_json j;
    j["scale"] = mech.scale();
    j["sampler"] = std::string(to_string(sampler));
    j["values"] = values;
    out << j.dump(2) << '\n';
    return kSuccess;
  }
  if (config.format == "csv") out << "value\n";
  for (double v : values) out << format_number(v) << '\n';
  return kSuccess;
}

inline int cmd_verify(const CliConfig& config, std::ostream& out,
                      std::ostream& err) {
  const BoundedLaplaceMechanism mech(config.domain(), config.budget(),
                                     resolve_scale(config));
  VerifyOptions options;
  options.privacy = {config.q_grid, config.set_grid, config.slack,
                     config.intervals};
  options.derivative_grid = config.derivative_grid;
  options.empirical_samples = config.samples;
  options.empirical_bins = config.bins;
  DefaultRandomSource rng(config.samples > 0 ? resolve_seed(config, err) : 0);
  const auto report = verify_mechanism(mech, options, rng);

  if (config.format == "json") {
    nlohmann::ordered_json j;
    j["scale"] = mech.scale();
    j["passed"] = report.passed();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
      nlohmann::ordered_json entry;
      entry["name"] = c.name;
      entry["passed"] = c.passed;
      entry["worst_margin"] = c.worst_margin;
      entry["witness"] = c.witness;
      if (!c.note.empty()) entry["note"] = c.note;
      j["checks"].push_back(std::move(entry));
    }
    out << j.dump(2) << '\n';
  } else if (config.format == "csv") {
    out << "name,passed,worst_margin,witness\n";
    for (const auto& c : report.checks) {
      out << c.name << ',' << (c.passed ? "true" : "false") << ','
          << format_number(c.worst_margin) << ",\"";
      bool first = true;
      for (const auto& [key, value] : c.witness) {
        out << (first ? "" : ";") << key << '=' << format_number(value);
        first = false;
      }
      out << "\"\n";
    }
  } else {
    out << "scale = " << format_number(mech.scale()) << '\n';
    for (const auto& c : report.checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name
          << " worst_margin=" << format_number(c.worst_margin);
      for (const auto& [key, value] : c.witness) {
        out << ' ' << key << '=' << format_number(value);
      }
      if (!c.note.empty()) out << " (" << c.note << ')';
      out << '\n';
    }
    out << "overall: " << (report.passed() ? "PASS" : "FAIL") << '\n';
  }
  return report.passed() ? kSuccess : kCheckFailed;
}

inline int cmd_sweep(const CliConfig& config, std::ostream& out) {
  if (config.sens_count == 0 || config.eps_count == 0) {
    throw InvalidArgument("grid counts must be positive");
  }
  const auto cells = epsilon_ratio_grid(
      config.width, logspace(config.sens_min, config.sens_max, config.sens_count),
      logspace(config.eps_min, config.eps_max, config.eps_count),
      config.calibration());
  const auto field = [](const std::optional<double>& v) {
    return v ? format_number(*v) : std::string("NA");
  };
  bool all_ok = true;
  if (config.format == "json") {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& cell : cells) {
      nlohmann::ordered_json row;
      row["sensitivity"] = cell.sensitivity;
      row["epsilon"] = cell.epsilon;
      row["b_star"] = cell.b_star ? nlohmann::ordered_json(*cell.b_star)
                                  : nlohmann::ordered_json(nullptr);
      row["effective_epsilon"] =
          cell.effective_epsilon
              ? nlohmann::ordered_json(*cell.effective_epsilon)
              : nlohmann::ordered_json(nullptr);
      row["ratio"] = cell.ratio ? nlohmann::ordered_json(*cell.ratio)
                                : nlohmann::ordered_json(nullptr);
      if (!cell.ok()) row["error"] = cell.error;
      all_ok = all_ok && cell.ok();
      rows.push_back(std::move(row));
    }
    out << rows.dump(2) << '\n';
  } else {
    out << "sensitivity,epsilon,b_star,effective_epsilon,ratio\n";
    for (const auto& cell : cells) {
      out << format_number(cell.sensitivity) << ','
          << format_number(cell.epsilon) << ',' << field(cell.b_star) << ','
          << field(cell.effective_epsilon) << ',' << field(cell.ratio)
          << '\n';
      all_ok = all_ok && cell.ok();
    }
  }
  return all_ok ? kSuccess : kCheckFailed;
}

inline void add_budget_options(CLI::App* app, CliConfig& config) {
  app->add_option("--epsilon", config.epsilon, "privacy loss epsilon >= 0")
      ->required();
  app->add_option("--delta", config.delta, "failure probability in [0, 1)")
      ->required();
  app->add_option("--lower", config.lower, "lower bound of the domain")
      ->required();
  app->add_option("--upper", config.upper, "upper bound of the domain")
      ->required();
  app->add_option("--sensitivity", config.sensitivity,
                  "query sensitivity, at most upper - lower")
      ->required();
  app->add_option("--tol", config.tol, "bisection tolerance");
  app->add_option("--max-iter", config.max_iter, "bisection iteration cap");
}

inline void add_format_option(CLI::App* app, CliConfig& config) {
  app->add_option("--format", config.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
}

}  // namespace detail

// Parses argv and dispatches. Returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CliConfig config;
  CLI::App app{"Calibrate, sample and verify the bounded Laplace mechanism"};
  app.require_subcommand(1);

  auto* calibrate_cmd =
      app.add_subcommand("calibrate", "compute the minimal private scale b*");
  detail::add_budget_options(calibrate_cmd, config);
  detail::add_format_option(calibrate_cmd, config);

  auto* sample_cmd =
      app.add_subcommand("sample", "draw values from the mechanism");
  detail::add_budget_options(sample_cmd, config);
  detail::add_format_option(sample_cmd, config);
  sample_cmd->add_option("--q", config.q, "true query answer")->required();
  sample_cmd->add_option("--n", config.n, "number of values");
  sample_cmd->add_option("--b", config.b, "scale override (default b*)");
  sample_cmd->add_option("--seed", config.seed, "random seed");
  sample_cmd->add_option("--sampler", config.sampler, "sampling method")
      ->check(CLI::IsMember({"inverse", "rejection", "truncated"}));

  auto* verify_cmd =
      app.add_subcommand("verify", "numerically check the privacy guarantee");
  detail::add_budget_options(verify_cmd, config);
  detail::add_format_option(verify_cmd, config);
  verify_cmd->add_option("--b", config.b, "scale to verify (default b*)");
  verify_cmd->add_option("--seed", config.seed, "seed for the empirical check");
  verify_cmd->add_option("--q-grid", config.q_grid, "query grid size");
  verify_cmd->add_option("--set-grid", config.set_grid,
                         "interval endpoint grid size");
  verify_cmd->add_option("--slack", config.slack, "numeric slack");
  verify_cmd->add_option("--intervals", config.intervals,
                         "sets are unions of up to this many intervals")
      ->check(CLI::Range(1, 2));
  verify_cmd->add_option("--derivative-grid", config.derivative_grid,
                         "grid size for finite-difference checks");
  verify_cmd->add_option("--samples", config.samples,
                         "samples per distribution for the empirical check "
                         "(0 disables)");
  verify_cmd->add_option("--bins", config.bins, "histogram bins");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "epsilon / effective epsilon over a grid");
  sweep_cmd->add_option("--width", config.width, "domain width u - l");
  sweep_cmd->add_option("--sens-min", config.sens_min);
  sweep_cmd->add_option("--sens-max", config.sens_max);
  sweep_cmd->add_option("--sens-count", config.sens_count);
  sweep_cmd->add_option("--eps-min", config.eps_min);
  sweep_cmd->add_option("--eps-max", config.eps_max);
  sweep_cmd->add_option("--eps-count", config.eps_count);
  sweep_cmd->add_option("--tol", config.tol, "bisection tolerance");
  sweep_cmd->add_option("--max-iter", config.max_iter,
                        "bisection iteration cap");
  detail::add_format_option(sweep_cmd, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kSuccess;
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (calibrate_cmd->parsed()) return detail::cmd_calibrate(config, out);
    if (sample_cmd->parsed()) return detail::cmd_sample(config, out, err);
    if (verify_cmd->parsed()) return detail::cmd_verify(config, out, err);
    return detail::cmd_sweep(config, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConvergenceFailure& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}

}  // namespace bounded_laplace::cli

#endif  // BOUNDED_LAPLACE_TOOLS_CLI_HPP_

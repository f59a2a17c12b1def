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

#ifndef BOUNDED_LAPLACE_CALIBRATION_HPP_
#define BOUNDED_LAPLACE_CALIBRATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bounded_laplace/domain.hpp"
#include "bounded_laplace/errors.hpp"
#include "bounded_laplace/mechanism.hpp"

namespace bounded_laplace {

struct CalibrationOptions {
  // Tolerance on the bracket width and on |f(b) - b|. Absolute for scales of
  // at least one, relative to the scale below that, since the privacy
  // condition's sensitivity to b grows like dQ / b^2.
  double tolerance = 1e-12;
  std::size_t max_iterations = 200;
};

struct CalibrationReport {
  double b0 = 0.0;
  double f_b0 = 0.0;
  double b_star = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  // eps - log dC(b*). For delta > 0 this is a diagnostic, not a privacy
  // guarantee of the underlying Laplace distribution.
  double effective_epsilon = 0.0;
};

// Scale of the pure Laplace mechanism: dQ / (eps - log(1 - delta)).
inline double baseline_scale(const OutputDomain& domain,
                             const PrivacyBudget& budget) {
  const double b0 = domain.sensitivity() / budget.total();
  if (!std::isfinite(b0) || !(b0 > 0.0)) {
    throw CalibrationInfeasible("baseline scale is not a positive finite "
                                "number for this budget");
  }
  return b0;
}

// f(b) = dQ / (eps - log dC(b) - log(1 - delta)). Nonincreasing in b; its
// denominator is positive for every b >= b0.
inline double fixed_point_operator(const OutputDomain& domain,
                                   const PrivacyBudget& budget, double b) {
  const double denominator = budget.total() - log_delta_c(domain, b);
  if (!(denominator > 0.0)) {
    throw CalibrationInfeasible(
        "fixed point operator denominator is not positive at b = " +
        std::to_string(b));
  }
  return domain.sensitivity() / denominator;
}

// Smallest epsilon met by scale b for the given delta:
//   dQ / b + log dC(b) + log(1 - delta).
inline double achieved_epsilon(const OutputDomain& domain, double b,
                               double delta) {
  require_positive_scale(b);
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw InvalidArgument("delta must lie in [0, 1), got " +
                          std::to_string(delta));
  }
  return domain.sensitivity() / b + log_delta_c(domain, b) +
         std::log1p(-delta);
}

// Unique fixed point b* of f by bisection on g(b) = f(b) - b over
// [b0, f(b0)], where g(b0) >= 0 >= g(f(b0)).
inline CalibrationReport calibrate(const OutputDomain& domain,
                                   const PrivacyBudget& budget,
                                   const CalibrationOptions& options = {}) {
  if (!(options.tolerance > 0.0)) {
    throw InvalidArgument("tolerance must be positive");
  }
  if (options.max_iterations == 0) {
    throw InvalidArgument("max_iterations must be positive");
  }

  CalibrationReport report;
  report.b0 = baseline_scale(domain, budget);
  report.f_b0 = fixed_point_operator(domain, budget, report.b0);

  const auto finish = [&](double b, double residual, std::size_t iterations) {
    report.b_star = b;
    report.residual = residual;
    report.iterations = iterations;
    report.effective_epsilon = budget.epsilon() - log_delta_c(domain, b);
    return report;
  };

  // Sensitivity spanning the domain makes f constant; b0 is the answer.
  if (report.f_b0 <= std::nextafter(report.b0,
                                    std::numeric_limits<double>::infinity())) {
    return finish(report.b0, std::abs(report.f_b0 - report.b0), 0);
  }

  double lo = report.b0;
  double hi = report.f_b0;
  for (std::size_t iteration = 1; iteration <= options.max_iterations;
       ++iteration) {
    const double mid = lo + 0.5 * (hi - lo);
    const double gap = fixed_point_operator(domain, budget, mid) - mid;
    const double residual = std::abs(gap);
    const bool stalled = mid <= lo || mid >= hi;
    if (gap > 0.0) {
      lo = mid;
    } else if (gap < 0.0) {
      hi = mid;
    } else {
      return finish(mid, 0.0, iteration);
    }
    const double target = options.tolerance * std::min(1.0, lo);
    if (residual <= target && (hi - lo <= target || stalled)) {
      return finish(mid, residual, iteration);
    }
    if (stalled) break;
  }
  throw ConvergenceFailure(lo, hi, options.max_iterations);
}

inline BoundedLaplaceMechanism calibrated_mechanism(
    const OutputDomain& domain, const PrivacyBudget& budget,
    const CalibrationOptions& options = {}) {
  return BoundedLaplaceMechanism(domain, budget,
                                 calibrate(domain, budget, options).b_star);
}

// count points geometrically spaced from first to last, endpoints exact.
inline std::vector<double> logspace(double first, double last,
                                    std::size_t count) {
  if (!(first > 0.0) || !(last > 0.0)) {
    throw InvalidArgument("logspace endpoints must be positive");
  }
  std::vector<double> out;
  if (count == 0) return out;
  if (count == 1) return {first};
  out.reserve(count);
  const double log_first = std::log(first);
  const double step = (std::log(last) - log_first) / double(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(std::exp(log_first + step * double(i)));
  }
  out.front() = first;
  out.back() = last;
  return out;
}

struct RatioCell {
  double sensitivity = 0.0;
  double epsilon = 0.0;
  std::optional<double> b_star;
  std::optional<double> effective_epsilon;
  std::optional<double> ratio;  // eps / eps'
  std::string error;            // non-empty iff calibration failed

  bool ok() const { return ratio.has_value(); }
};

struct SweepGrid {
  double domain_width = 1.0;
  std::vector<double> sensitivities;
  std::vector<double> epsilons;
};

inline SweepGrid default_sweep_grid() {
  return {1.0, logspace(1e-3, 1.0, 50), logspace(1e-2, 10.0, 50)};
}

// Ratio eps / eps' over a grid of sensitivities and epsilons on the domain
// [0, domain_width] with delta = 0. Rows are sorted by (sensitivity, epsilon).
// Failed cells carry the error message instead of values.
inline std::vector<RatioCell> epsilon_ratio_grid(
    double domain_width, std::vector<double> sensitivities,
    std::vector<double> epsilons, const CalibrationOptions& options = {}) {
  if (!std::isfinite(domain_width) || !(domain_width > 0.0)) {
    throw InvalidArgument("domain width must be positive and finite");
  }
  std::sort(sensitivities.begin(), sensitivities.end());
  std::sort(epsilons.begin(), epsilons.end());

  std::vector<RatioCell> cells;
  cells.reserve(sensitivities.size() * epsilons.size());
  for (double sensitivity : sensitivities) {
    for (double epsilon : epsilons) {
      RatioCell cell;
      cell.sensitivity = sensitivity;
      cell.epsilon = epsilon;
      try {
        if (!(epsilon > 0.0)) {
          throw InvalidArgument("sweep epsilons must be positive");
        }
        const OutputDomain domain(0.0, domain_width, sensitivity);
        const PrivacyBudget budget(epsilon, 0.0);
        const CalibrationReport report = calibrate(domain, budget, options);
        cell.b_star = report.b_star;
        cell.effective_epsilon = report.effective_epsilon;
        cell.ratio = epsilon / report.effective_epsilon;
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

inline std::vector<RatioCell> epsilon_ratio_grid(
    const SweepGrid& grid, const CalibrationOptions& options = {}) {
  return epsilon_ratio_grid(grid.domain_width, grid.sensitivities,
                            grid.epsilons, options);
}

}  // namespace bounded_laplace

#endif  // BOUNDED_LAPLACE_CALIBRATION_HPP_

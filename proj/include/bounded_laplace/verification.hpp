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

#ifndef BOUNDED_LAPLACE_VERIFICATION_HPP_
#define BOUNDED_LAPLACE_VERIFICATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bounded_laplace/calibration.hpp"
#include "bounded_laplace/domain.hpp"
#include "bounded_laplace/errors.hpp"
#include "bounded_laplace/mechanism.hpp"
#include "bounded_laplace/random.hpp"

namespace bounded_laplace {

// Outcome of one numerical check. worst_margin > 0 means the checked
// inequality is violated by that amount at the witness point; it is recorded
// whether or not the check passed.
struct CheckResult {
  std::string name;
  bool passed = false;
  double worst_margin = -std::numeric_limits<double>::infinity();
  std::map<std::string, double> witness;
  std::string note;
};

inline CheckResult named_check(std::string name) {
  CheckResult result;
  result.name = std::move(name);
  return result;
}

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed; });
  }

  void append(CheckResult check) { checks.push_back(std::move(check)); }

  void append(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

struct PrivacyCheckConfig {
  std::size_t q_grid_size = 200;
  std::size_t set_grid_size = 200;
  double slack = 1e-9;
  // Sets A are unions of up to this many grid intervals (1 or 2).
  int max_intervals = 1;

  void validate() const {
    if (q_grid_size < 2 || set_grid_size < 2) {
      throw InvalidArgument("grid sizes must be at least 2");
    }
    if (!(slack >= 0.0)) throw InvalidArgument("slack must be nonnegative");
    if (max_intervals != 1 && max_intervals != 2) {
      throw InvalidArgument("max_intervals must be 1 or 2");
    }
  }
};

namespace detail {

inline std::vector<double> linspace(double first, double last,
                                    std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = first;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = first + (last - first) * (double(i) / double(count - 1));
  }
  out.front() = first;
  out.back() = last;
  return out;
}

struct IntervalChoice {
  double gain = 0.0;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// max_{i <= j} h[j] - h[i], over prefix [0, n) for each n, as a running array.
inline std::vector<IntervalChoice> best_prefix_intervals(
    const std::vector<double>& h) {
  std::vector<IntervalChoice> best(h.size());
  std::size_t argmin = 0;
  IntervalChoice running;
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (h[j] < h[argmin]) argmin = j;
    const double gain = h[j] - h[argmin];
    if (gain > running.gain) running = {gain, argmin, j};
    best[j] = running;
  }
  return best;
}

inline std::vector<IntervalChoice> best_suffix_intervals(
    const std::vector<double>& h) {
  std::vector<IntervalChoice> best(h.size());
  if (h.empty()) return best;
  std::size_t argmax = h.size() - 1;
  IntervalChoice running{0.0, argmax, argmax};
  for (std::size_t k = h.size(); k-- > 0;) {
    if (h[k] > h[argmax]) argmax = k;
    const double gain = h[argmax] - h[k];
    if (gain > running.gain) running = {gain, k, argmax};
    best[k] = running;
  }
  return best;
}

// Central difference of fn at x with the stencil clamped to [lo, hi].
// noise bounds the rounding error of the quotient.
struct Slope {
  double value = 0.0;
  double noise = 0.0;
  bool valid = false;
};

inline Slope clamped_difference(const std::function<double(double)>& fn,
                                double x, double h, double lo, double hi) {
  const double left = std::max(lo, x - h);
  const double right = std::min(hi, x + h);
  if (!(right > left)) return {};
  const double f_right = fn(right);
  const double f_left = fn(left);
  const double span = right - left;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  return {(f_right - f_left) / span,
          16.0 * kEps * (std::abs(f_right) + std::abs(f_left)) / span, true};
}

}  // namespace detail

// R(q, z) = (C_{q+z} / C_q) e^{z/b}, the worst pointwise density ratio
// between W_{q+z} and W_q. Requires q and q + z in the domain.
// An endpoint q + z overshooting u by rounding (at most 1e-12 of the width)
// is pulled back onto u.
inline double normalizer_ratio(const OutputDomain& domain, double q, double z,
                               double b) {
  double shifted = q + z;
  if (shifted > domain.upper() &&
      shifted - domain.upper() <= 1e-12 * domain.width()) {
    shifted = domain.upper();
  }
  return normalizer(domain, shifted, b) / normalizer(domain, q, b) *
         std::exp(z / b);
}

// max_x log(pdf_q(x) / pdf_q'(x)) = log(C_q' / C_q) + |q - q'| / b.
inline double pointwise_log_ratio_bound(const BoundedLaplaceMechanism& mech,
                                        double q, double q_prime) {
  return std::log(mech.normalizer(q_prime) / mech.normalizer(q)) +
         std::abs(q - q_prime) / mech.scale();
}

// Brute-force (eps, delta) check over a grid of neighbouring query pairs and
// all grid intervals A in [l, u]:
//   P(W_q in A) - e^eps P(W_q' in A) - delta <= slack.
// Interval probabilities come from the closed-form cdf. For each q the
// partner q +/- dQ is checked in addition to the grid partners, so the exact
// worst pair (l, l + dQ) is always covered.
inline CheckResult check_privacy_inequality(
    const BoundedLaplaceMechanism& mech, const PrivacyCheckConfig& config = {}) {
  config.validate();
  const OutputDomain& domain = mech.domain();
  const double l = domain.lower();
  const double u = domain.upper();
  const double sensitivity = domain.sensitivity();
  const double exp_eps = std::exp(mech.budget().epsilon());
  const double delta = mech.budget().delta();

  const auto qs = detail::linspace(l, u, config.q_grid_size);
  const auto points = detail::linspace(l, u, config.set_grid_size);
  const auto cdf_row = [&](double q) {
    std::vector<double> row(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
      row[k] = mech.cdf(q, points[k]);
    }
    return row;
  };
  std::vector<std::vector<double>> grid_cdf;
  grid_cdf.reserve(qs.size());
  for (double q : qs) grid_cdf.push_back(cdf_row(q));

  CheckResult result;
  result.name = "privacy_inequality";
  std::vector<double> h(points.size());

  const auto examine = [&](double q, const std::vector<double>& fq,
                           double q_prime, const std::vector<double>& fqp) {
    for (std::size_t k = 0; k < points.size(); ++k) {
      h[k] = fq[k] - exp_eps * fqp[k];
    }
    const auto prefix = detail::best_prefix_intervals(h);
    double gain = prefix.back().gain;
    detail::IntervalChoice first = prefix.back();
    detail::IntervalChoice second;
    bool two = false;
    if (config.max_intervals == 2) {
      const auto suffix = detail::best_suffix_intervals(h);
      for (std::size_t s = 0; s < h.size(); ++s) {
        const double combined = prefix[s].gain + suffix[s].gain;
        if (combined > gain) {
          gain = combined;
          first = prefix[s];
          second = suffix[s];
          two = true;
        }
      }
    }
    const double margin = gain - delta;
    if (margin > result.worst_margin) {
      result.worst_margin = margin;
      result.witness = {{"q", q},
                        {"q_prime", q_prime},
                        {"a_lower", points[first.begin]},
                        {"a_upper", points[first.end]}};
      if (two) {
        result.witness["a2_lower"] = points[second.begin];
        result.witness["a2_upper"] = points[second.end];
      }
    }
  };

  for (std::size_t i = 0; i < qs.size(); ++i) {
    const double q = qs[i];
    for (std::size_t j = 0; j < qs.size(); ++j) {
      if (j == i || std::abs(qs[j] - q) > sensitivity) continue;
      examine(q, grid_cdf[i], qs[j], grid_cdf[j]);
    }
    for (double q_prime : {q + sensitivity, q - sensitivity}) {
      if (domain.contains(q_prime)) {
        examine(q, grid_cdf[i], q_prime, cdf_row(q_prime));
      }
    }
  }
  result.passed = result.worst_margin <= config.slack;
  return result;
}

// The scalar sufficient condition (1 / dC(b)) e^{eps - dQ/b} + delta >= 1.
// worst_margin = 1 - lhs.
inline CheckResult check_sufficient_condition(
    const BoundedLaplaceMechanism& mech, double slack = 1e-9) {
  const double b = mech.scale();
  const double lhs =
      std::exp(mech.budget().epsilon() - mech.domain().sensitivity() / b -
               log_delta_c(mech.domain(), b)) +
      mech.budget().delta();
  CheckResult result;
  result.name = "sufficient_condition";
  result.worst_margin = 1.0 - lhs;
  result.passed = result.worst_margin <= slack;
  result.witness = {{"b", b}, {"lhs", lhs}};
  return result;
}

// Finite-difference sign checks of R(q, z) on a (q, z) grid with q + z <= u:
// dR/dz >= 0 and dR/dq <= 0. Step 1e-6 * min(u - l, b).
inline VerificationReport check_ratio_monotonicity(const OutputDomain& domain,
                                                   double b,
                                                   std::size_t grid = 64,
                                                   double slack = 1e-9) {
  require_positive_scale(b);
  if (grid < 2) throw InvalidArgument("grid must be at least 2");
  const double l = domain.lower();
  const double u = domain.upper();
  const double h = 1e-6 * std::min(domain.width(), b);

  CheckResult in_z = named_check("ratio_nondecreasing_in_offset");
  CheckResult in_q = named_check("ratio_nonincreasing_in_query");
  for (double q : detail::linspace(l, u, grid)) {
    for (double z : detail::linspace(0.0, u - q, grid)) {
      const auto dz = detail::clamped_difference(
          [&](double zz) { return normalizer_ratio(domain, q, zz, b); }, z, h,
          0.0, u - q);
      if (dz.valid) {
        const double margin = -dz.value - dz.noise;
        if (margin > in_z.worst_margin) {
          in_z.worst_margin = margin;
          in_z.witness = {{"q", q}, {"z", z}, {"b", b}, {"slope", dz.value}};
        }
      }
      const auto dq = detail::clamped_difference(
          [&](double qq) { return normalizer_ratio(domain, qq, z, b); }, q, h,
          l, u - z);
      if (dq.valid) {
        const double margin = dq.value - dq.noise;
        if (margin > in_q.worst_margin) {
          in_q.worst_margin = margin;
          in_q.witness = {{"q", q}, {"z", z}, {"b", b}, {"slope", dq.value}};
        }
      }
    }
  }
  in_z.passed = in_z.worst_margin <= slack;
  in_q.passed = in_q.worst_margin <= slack;
  VerificationReport report;
  report.append(std::move(in_z));
  report.append(std::move(in_q));
  return report;
}

// Checks on the fixed point operator:
//   f(b0) >= b0, with equality iff dQ = u - l;
//   dC(b0) < e^eps / (1 - delta);
//   f'(b) <= 0 and d(dC)/db <= 0 by central differences on a log grid over
//   [b0, 100 b0].
// The slope checks record the largest slope seen in the witness, which is
// zero exactly when the sensitivity spans the domain.
inline VerificationReport check_fixed_point_lemmas(const OutputDomain& domain,
                                                   const PrivacyBudget& budget,
                                                   std::size_t grid = 64,
                                                   double slack = 1e-9) {
  if (grid < 2) throw InvalidArgument("grid must be at least 2");
  VerificationReport report;
  const double b0 = baseline_scale(domain, budget);
  const double f_b0 = fixed_point_operator(domain, budget, b0);
  const bool spans = domain.spans_domain();

  CheckResult start = named_check("operator_start_above_baseline");
  start.worst_margin = b0 - f_b0;
  start.witness = {{"b0", b0}, {"f_b0", f_b0}};
  start.passed = spans ? std::abs(f_b0 - b0) <= 1e-12 * b0 : f_b0 > b0;
  if (spans) start.note = "sensitivity spans the domain; equality expected";
  report.append(std::move(start));

  CheckResult bound = named_check("delta_c_below_budget_at_baseline");
  const double log_dc0 = log_delta_c(domain, b0);
  bound.worst_margin = log_dc0 - budget.total();
  bound.witness = {{"b0", b0}, {"log_delta_c", log_dc0}};
  bound.passed = bound.worst_margin < 0.0;
  report.append(std::move(bound));

  const auto slope_check = [&](std::string name,
                               const std::function<double(double)>& fn) {
    CheckResult check = named_check(std::move(name));
    double max_slope = -std::numeric_limits<double>::infinity();
    for (double b : logspace(b0, 100.0 * b0, grid)) {
      const auto slope = detail::clamped_difference(
          fn, b, 1e-6 * b, 0.5 * b0, std::numeric_limits<double>::max());
      max_slope = std::max(max_slope, slope.value);
      const double margin = slope.value - slope.noise;
      if (margin > check.worst_margin) {
        check.worst_margin = margin;
        check.witness = {{"b", b}, {"slope", slope.value}};
      }
    }
    check.witness["max_slope"] = max_slope;
    check.passed = check.worst_margin <= slack;
    report.append(std::move(check));
  };
  slope_check("operator_nonincreasing", [&](double b) {
    return fixed_point_operator(domain, budget, b);
  });
  slope_check("delta_c_nonincreasing",
              [&](double b) { return delta_c_excess(domain, b); });
  return report;
}

struct EmpiricalEstimate {
  double log_ratio = 0.0;   // max over usable bins of log(p_q / p_q')
  bool reliable = false;
  std::size_t bins_used = 0;
  double worst_bin_center = 0.0;
};

// Monte Carlo estimate of the privacy loss between W_q and W_q' from binned
// inverse-transform samples. Bins where either count is below min_count are
// skipped; with none left, or fewer than min_count samples per bin on
// average, the estimate is flagged unreliable.
template <RandomSource G>
EmpiricalEstimate empirical_privacy_estimate(
    const BoundedLaplaceMechanism& mech, double q, double q_prime,
    std::size_t samples, std::size_t bins, G& rng,
    std::size_t min_count = 1000) {
  const OutputDomain& domain = mech.domain();
  domain.require_contains(q);
  domain.require_contains(q_prime);
  if (std::abs(q - q_prime) > domain.sensitivity()) {
    throw InvalidArgument("query values are farther apart than the "
                          "sensitivity");
  }
  if (samples == 0 || bins == 0) {
    throw InvalidArgument("samples and bins must be positive");
  }

  const auto histogram = [&](double location) {
    std::vector<std::uint64_t> counts(bins, 0);
    for (std::size_t i = 0; i < samples; ++i) {
      const double x = mech.sample_inverse(location, rng);
      const double t = (x - domain.lower()) / domain.width();
      const auto bin = std::min(
          bins - 1, static_cast<std::size_t>(std::max(0.0, t) * double(bins)));
      ++counts[bin];
    }
    return counts;
  };
  const auto counts_q = histogram(q);
  const auto counts_qp = histogram(q_prime);

  EmpiricalEstimate estimate;
  estimate.log_ratio = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < bins; ++k) {
    if (counts_q[k] < min_count || counts_qp[k] < min_count) continue;
    ++estimate.bins_used;
    const double log_ratio =
        std::log(double(counts_q[k])) - std::log(double(counts_qp[k]));
    if (log_ratio > estimate.log_ratio) {
      estimate.log_ratio = log_ratio;
      estimate.worst_bin_center =
          domain.lower() + domain.width() * (double(k) + 0.5) / double(bins);
    }
  }
  if (estimate.bins_used == 0) estimate.log_ratio = 0.0;
  estimate.reliable =
      estimate.bins_used > 0 && samples / bins >= min_count;
  return estimate;
}

// Empirical privacy loss at the worst pair (l, l + dQ). Gates only when
// delta = 0 and the estimate is reliable; otherwise informational.
template <RandomSource G>
CheckResult check_empirical_privacy(const BoundedLaplaceMechanism& mech,
                                    std::size_t samples, std::size_t bins,
                                    G& rng, double tolerance = 0.05) {
  const double q = mech.domain().lower();
  const double q_prime = q + mech.domain().sensitivity();
  const auto estimate =
      empirical_privacy_estimate(mech, q, q_prime, samples, bins, rng);
  CheckResult result = named_check("empirical_privacy_loss");
  result.worst_margin = estimate.log_ratio - mech.budget().epsilon();
  result.witness = {{"q", q},
                    {"q_prime", q_prime},
                    {"log_ratio", estimate.log_ratio},
                    {"bin_center", estimate.worst_bin_center},
                    {"bins_used", double(estimate.bins_used)}};
  if (!estimate.reliable) {
    result.passed = true;
    result.note = "estimate unreliable: too few samples per bin";
  } else if (mech.budget().delta() > 0.0) {
    result.passed = true;
    result.note = "informational: delta > 0 permits log ratios above epsilon";
  } else {
    result.passed = result.worst_margin <= tolerance;
  }
  return result;
}

struct VerifyOptions {
  PrivacyCheckConfig privacy;
  std::size_t derivative_grid = 64;
  std::size_t empirical_samples = 1000000;
  std::size_t empirical_bins = 50;
  double empirical_tolerance = 0.05;
};

// Runs every check against one mechanism. The empirical check is skipped when
// empirical_samples is zero.
template <RandomSource G>
VerificationReport verify_mechanism(const BoundedLaplaceMechanism& mech,
                                    const VerifyOptions& options, G& rng) {
  VerificationReport report;
  report.append(check_privacy_inequality(mech, options.privacy));
  report.append(check_sufficient_condition(mech, options.privacy.slack));
  report.append(check_ratio_monotonicity(mech.domain(), mech.scale(),
                                         options.derivative_grid,
                                         options.privacy.slack));
  report.append(check_fixed_point_lemmas(mech.domain(), mech.budget(),
                                         options.derivative_grid,
                                         options.privacy.slack));
  if (options.empirical_samples > 0) {
    report.append(check_empirical_privacy(mech, options.empirical_samples,
                                          options.empirical_bins, rng,
                                          options.empirical_tolerance));
  }
  return report;
}

}  // namespace bounded_laplace

#endif  // BOUNDED_LAPLACE_VERIFICATION_HPP_

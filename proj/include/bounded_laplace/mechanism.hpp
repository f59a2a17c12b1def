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

#ifndef BOUNDED_LAPLACE_MECHANISM_HPP_
#define BOUNDED_LAPLACE_MECHANISM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "bounded_laplace/domain.hpp"
#include "bounded_laplace/errors.hpp"
#include "bounded_laplace/random.hpp"

namespace bounded_laplace {

namespace detail {

// Mass of Laplace(0, b) on [0, distance], i.e. (1 - e^{-distance/b}) / 2.
inline double half_mass(double distance, double b) {
  return -0.5 * std::expm1(-distance / b);
}

// 1 - e^{-distance/b}, computed without cancellation.
inline double one_minus_exp(double distance, double b) {
  return -std::expm1(-distance / b);
}

}  // namespace detail

// Mass C_q of the unbounded Laplace(q, b) density inside [l, u]:
//   C_q = 1 - (e^{-(q-l)/b} + e^{-(u-q)/b}) / 2.
// Evaluated as the sum of the two one-sided masses so that small b and large
// b both keep full relative precision.
inline double normalizer(const OutputDomain& domain, double q, double b) {
  require_positive_scale(b);
  domain.require_contains(q);
  return detail::half_mass(q - domain.lower(), b) +
         detail::half_mass(domain.upper() - q, b);
}

// Excess ratio Delta C(b) - 1 where Delta C(b) = C_{l+dQ}(b) / C_l(b).
// The difference C_{l+dQ} - C_l factors as
//   (1 - e^{-dQ/b}) (1 - e^{-(u-l-dQ)/b}) / 2,
// which is exactly zero when the sensitivity spans the domain.
inline double delta_c_excess(const OutputDomain& domain, double b) {
  require_positive_scale(b);
  const double width = domain.width();
  const double dq = domain.sensitivity();
  return detail::one_minus_exp(dq, b) *
         detail::one_minus_exp(width - dq, b) /
         detail::one_minus_exp(width, b);
}

// Worst-case normalizer ratio C_{l+dQ}(b) / C_l(b). Always >= 1.
inline double delta_c(const OutputDomain& domain, double b) {
  return 1.0 + delta_c_excess(domain, b);
}

inline double log_delta_c(const OutputDomain& domain, double b) {
  return std::log1p(delta_c_excess(domain, b));
}

// Clamp an unbounded draw onto the domain (the truncation baseline).
inline double truncate_to_domain(const OutputDomain& domain, double x) {
  return std::clamp(x, domain.lower(), domain.upper());
}

// Truncated Laplace: draw Laplace(q, b) and project onto [l, u]. The bounds
// carry point masses equal to the unbounded tail masses.
template <RandomSource G>
double sample_truncated(const OutputDomain& domain, double q, double b,
                        G& rng) {
  require_positive_scale(b);
  domain.require_contains(q);
  return truncate_to_domain(domain, sample_laplace(q, b, rng));
}

enum class Sampler { kInverse, kRejection, kTruncated };

inline std::string_view to_string(Sampler sampler) {
  switch (sampler) {
    case Sampler::kInverse:
      return "inverse";
    case Sampler::kRejection:
      return "rejection";
    case Sampler::kTruncated:
      return "truncated";
  }
  return "unknown";
}

inline Sampler parse_sampler(std::string_view name) {
  if (name == "inverse") return Sampler::kInverse;
  if (name == "rejection") return Sampler::kRejection;
  if (name == "truncated") return Sampler::kTruncated;
  throw InvalidArgument("unknown sampler '" + std::string(name) + "'");
}

struct RejectionDraw {
  double value;
  std::uint64_t draws;
};

// The bounded Laplace mechanism W_q: the Laplace(q, b) density restricted to
// [l, u] and renormalised by C_q.
//
// The constructor validates the scale only. Whether the scale actually meets
// the budget is reported by privacy_condition_margin() and the verification
// checks, so deliberately miscalibrated mechanisms can be built for testing.
class BoundedLaplaceMechanism {
 public:
  BoundedLaplaceMechanism(OutputDomain domain, PrivacyBudget budget,
                          double scale)
      : domain_(domain), budget_(budget), scale_(scale) {
    require_positive_scale(scale);
  }

  const OutputDomain& domain() const { return domain_; }
  const PrivacyBudget& budget() const { return budget_; }
  double scale() const { return scale_; }

  double normalizer(double q) const {
    return bounded_laplace::normalizer(domain_, q, scale_);
  }

  // eps - dQ/b - log dC(b) - log(1 - delta). Nonnegative iff the scale
  // satisfies the sufficient privacy condition.
  double privacy_condition_margin() const {
    return budget_.total() - domain_.sensitivity() / scale_ -
           log_delta_c(domain_, scale_);
  }

  double pdf(double q, double x) const {
    const double c = normalizer(q);
    if (!domain_.contains(x)) return 0.0;
    return std::exp(-std::abs(x - q) / scale_) / (2.0 * scale_ * c);
  }

  double cdf(double q, double x) const {
    const double c = normalizer(q);
    if (x <= domain_.lower()) return 0.0;
    if (x >= domain_.upper()) return 1.0;
    return std::min(1.0, mass_below(q, x) / c);
  }

  // P(W_q in [a, b]) for a <= b.
  double interval_probability(double q, double a, double b) const {
    if (b < a) throw InvalidArgument("interval endpoints out of order");
    return std::max(0.0, cdf(q, b) - cdf(q, a));
  }

  // Closed-form inverse of cdf; two branches around q.
  double quantile(double q, double p) const {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidArgument("probability must lie in [0, 1], got " +
                            std::to_string(p));
    }
    const double c = normalizer(q);
    if (p == 0.0) return domain_.lower();
    if (p == 1.0) return domain_.upper();
    const double target = p * c;
    const double below_q = detail::half_mass(q - domain_.lower(), scale_);
    double x;
    if (target <= below_q) {
      // Solve (e^{(x-q)/b} - e^{(l-q)/b}) / 2 = target.
      x = q + scale_ * std::log1p(2.0 * (target - below_q));
    } else {
      // Solve (1 - e^{-(x-q)/b}) / 2 = target - below_q.
      x = q - scale_ * std::log1p(-2.0 * (target - below_q));
    }
    return truncate_to_domain(domain_, x);
  }

  // Inverse transform sampling with U drawn from the open unit interval.
  template <RandomSource G>
  double sample_inverse(double q, G& rng) const {
    domain_.require_contains(q);
    return quantile(q, uniform_open_unit(rng));
  }

  // Redraw Laplace(q, b) until the value lands in [l, u]. The number of
  // attempts is geometric with success probability C_q.
  template <RandomSource G>
  RejectionDraw sample_rejection(double q, G& rng) const {
    domain_.require_contains(q);
    std::uint64_t draws = 0;
    for (;;) {
      ++draws;
      const double x = sample_laplace(q, scale_, rng);
      if (domain_.contains(x)) return {x, draws};
    }
  }

  template <RandomSource G>
  double sample(double q, G& rng, Sampler sampler = Sampler::kInverse) const {
    switch (sampler) {
      case Sampler::kInverse:
        return sample_inverse(q, rng);
      case Sampler::kRejection:
        return sample_rejection(q, rng).value;
      case Sampler::kTruncated:
        return sample_truncated(domain_, q, scale_, rng);
    }
    throw InvalidArgument("unknown sampler");
  }

 private:
  // Unnormalised Laplace(q, b) mass on [l, x] for x in [l, u].
  double mass_below(double q, double x) const {
    const double l = domain_.lower();
    if (x <= q) {
      // (e^{(x-q)/b} - e^{(l-q)/b}) / 2
      return 0.5 * std::exp((x - q) / scale_) *
             detail::one_minus_exp(x - l, scale_);
    }
    return detail::half_mass(q - l, scale_) +
           detail::half_mass(x - q, scale_);
  }

  OutputDomain domain_;
  PrivacyBudget budget_;
  double scale_;
};

}  // namespace bounded_laplace

#endif  // BOUNDED_LAPLACE_MECHANISM_HPP_

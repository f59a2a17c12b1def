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

#ifndef BOUNDED_LAPLACE_DOMAIN_HPP_
#define BOUNDED_LAPLACE_DOMAIN_HPP_

#include <cmath>
#include <string>

#include "bounded_laplace/errors.hpp"

namespace bounded_laplace {

// The (epsilon, delta) pair of approximate differential privacy.
class PrivacyBudget {
 public:
  PrivacyBudget(double epsilon, double delta)
      : epsilon_(epsilon), delta_(delta) {
    if (!std::isfinite(epsilon) || epsilon < 0.0) {
      throw InvalidArgument("epsilon must be finite and nonnegative, got " +
                            std::to_string(epsilon));
    }
    if (!(delta >= 0.0 && delta < 1.0)) {
      throw InvalidArgument("delta must lie in [0, 1), got " +
                            std::to_string(delta));
    }
    if (epsilon == 0.0 && delta == 0.0) throw UnsatisfiableBudget();
  }

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

  // -log(1 - delta), the additive contribution of delta to the budget.
  double delta_term() const { return -std::log1p(-delta_); }

  // epsilon - log(1 - delta), the denominator of the pure Laplace scale.
  double total() const { return epsilon_ + delta_term(); }

  friend bool operator==(const PrivacyBudget&, const PrivacyBudget&) = default;

 private:
  double epsilon_;
  double delta_;
};

// Output interval [lower, upper] together with the query sensitivity.
class OutputDomain {
 public:
  OutputDomain(double lower, double upper, double sensitivity)
      : lower_(lower), upper_(upper), sensitivity_(sensitivity) {
    if (!std::isfinite(lower) || !std::isfinite(upper)) {
      throw InvalidArgument("domain bounds must be finite");
    }
    if (!(lower < upper)) {
      throw InvalidArgument("lower bound must be strictly less than upper");
    }
    if (!std::isfinite(sensitivity) || !(sensitivity > 0.0)) {
      throw InvalidArgument("sensitivity must be positive and finite");
    }
    if (sensitivity > width()) {
      throw InvalidArgument("sensitivity " + std::to_string(sensitivity) +
                            " exceeds the domain width " +
                            std::to_string(width()));
    }
  }

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double sensitivity() const { return sensitivity_; }
  double width() const { return upper_ - lower_; }

  // Sensitivity equal to the width: bounding costs no extra privacy.
  bool spans_domain() const { return sensitivity_ == width(); }

  bool contains(double x) const { return x >= lower_ && x <= upper_; }

  void require_contains(double q) const {
    if (!contains(q)) {
      throw InvalidArgument("query value " + std::to_string(q) +
                            " lies outside [" + std::to_string(lower_) +
                            ", " + std::to_string(upper_) + "]");
    }
  }

  friend bool operator==(const OutputDomain&, const OutputDomain&) = default;

 private:
  double lower_;
  double upper_;
  double sensitivity_;
};

inline void require_positive_scale(double b) {
  if (!std::isfinite(b) || !(b > 0.0)) {
    throw InvalidArgument("scale must be positive and finite, got " +
                          std::to_string(b));
  }
}

}  // namespace bounded_laplace

#endif  // BOUNDED_LAPLACE_DOMAIN_HPP_

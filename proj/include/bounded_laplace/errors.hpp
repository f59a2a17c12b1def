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

#ifndef BOUNDED_LAPLACE_ERRORS_HPP_
#define BOUNDED_LAPLACE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bounded_laplace {

// Raised when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// epsilon = delta = 0 admits no finite noise scale.
class UnsatisfiableBudget : public InvalidArgument {
 public:
  UnsatisfiableBudget()
      : InvalidArgument("epsilon and delta cannot both be zero") {}
};

// The fixed point operator's denominator is not positive at the requested
// scale, so no positive scale is produced.
class CalibrationInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bisection ran out of iterations. Carries the last bracket.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(double lower, double upper, std::size_t iterations)
      : std::runtime_error("bisection did not converge after " +
                           std::to_string(iterations) +
                           " iterations; last bracket [" +
                           std::to_string(lower) + ", " +
                           std::to_string(upper) + "]"),
        lower_(lower),
        upper_(upper),
        iterations_(iterations) {}

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  std::size_t iterations() const { return iterations_; }

 private:
  double lower_;
  double upper_;
  std::size_t iterations_;
};

}  // namespace bounded_laplace

#endif  // BOUNDED_LAPLACE_ERRORS_HPP_

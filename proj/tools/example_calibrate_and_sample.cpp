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

// Calibrates the bounded Laplace mechanism for a count in [0, 100] and
// releases a few noisy answers.

#include <cstdio>

#include "bounded_laplace/bounded_laplace.hpp"

int main() {
  using namespace bounded_laplace;

  const OutputDomain domain(0.0, 100.0, 1.0);
  const PrivacyBudget budget(0.5, 0.0);
  const CalibrationReport report = calibrate(domain, budget);
  std::printf("pure Laplace scale b0 = %.6f\n", report.b0);
  std::printf("bounded scale      b* = %.6f (%zu bisection steps)\n",
              report.b_star, report.iterations);
  std::printf("effective epsilon     = %.6f\n", report.effective_epsilon);

  const BoundedLaplaceMechanism mech(domain, budget, report.b_star);
  DefaultRandomSource rng(2018);
  const double true_count = 0.0;
  for (int i = 0; i < 5; ++i) {
    std::printf("release %d: %.3f\n", i, mech.sample_inverse(true_count, rng));
  }
  return 0;
}

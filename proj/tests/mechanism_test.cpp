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

#include "bounded_laplace/mechanism.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace bounded_laplace {
namespace {

constexpr int kNumSamples = 100000;

BoundedLaplaceMechanism MakeMechanism(double l, double u, double dq,
                                      double b) {
  return BoundedLaplaceMechanism(OutputDomain(l, u, dq), PrivacyBudget(1, 0),
                                 b);
}

TEST(DomainTest, RejectsInvalidBudgets) {
  EXPECT_THROW(PrivacyBudget(0.0, 0.0), UnsatisfiableBudget);
  EXPECT_THROW(PrivacyBudget(-1.0, 0.0), InvalidArgument);
  EXPECT_THROW(PrivacyBudget(1.0, 1.0), InvalidArgument);
  EXPECT_THROW(PrivacyBudget(1.0, -0.1), InvalidArgument);
  EXPECT_THROW(PrivacyBudget(NAN, 0.0), InvalidArgument);
  EXPECT_NO_THROW(PrivacyBudget(0.0, 0.1));
}

TEST(DomainTest, UnsatisfiableBudgetMessage) {
  try {
    PrivacyBudget(0.0, 0.0);
    FAIL();
  } catch (const UnsatisfiableBudget& e) {
    EXPECT_STREQ(e.what(), "epsilon and delta cannot both be zero");
  }
}

TEST(DomainTest, RejectsInvalidDomains) {
  EXPECT_THROW(OutputDomain(1.0, 1.0, 0.5), InvalidArgument);
  EXPECT_THROW(OutputDomain(2.0, 1.0, 0.5), InvalidArgument);
  EXPECT_THROW(OutputDomain(0.0, INFINITY, 0.5), InvalidArgument);
  EXPECT_THROW(OutputDomain(0.0, 1.0, 0.0), InvalidArgument);
  // Sensitivity wider than the domain is rejected, not clamped.
  EXPECT_THROW(OutputDomain(0.0, 1.0, 1.5), InvalidArgument);
  EXPECT_TRUE(OutputDomain(0.0, 1.0, 1.0).spans_domain());
  EXPECT_FALSE(OutputDomain(0.0, 1.0, 0.5).spans_domain());
}

TEST(NormalizerTest, ClosedFormPlugIns) {
  const OutputDomain domain(0.0, 1.0, 0.5);
  EXPECT_NEAR(normalizer(domain, 0.0, 1.0 / std::log(2.0)), 0.25, 1e-15);
  EXPECT_NEAR(normalizer(domain, 0.5, 0.5 / std::log(2.0)), 0.5, 1e-15);
}

TEST(NormalizerTest, MatchesQuadrature) {
  const OutputDomain domain(0.0, 1.0, 0.5);
  EXPECT_NEAR(normalizer(domain, 0.3, 0.7),
              oracle::quadrature_normalizer(0.0, 1.0, 0.3, 0.7), 1e-10);
}

TEST(NormalizerTest, RejectsOutOfDomainArguments) {
  const OutputDomain domain(0.0, 1.0, 0.5);
  EXPECT_THROW(normalizer(domain, -0.1, 1.0), InvalidArgument);
  EXPECT_THROW(normalizer(domain, 1.1, 1.0), InvalidArgument);
  EXPECT_THROW(normalizer(domain, 0.5, 0.0), InvalidArgument);
  EXPECT_THROW(normalizer(domain, 0.5, -1.0), InvalidArgument);
}

TEST(NormalizerTest, SmallScaleTendsToOne) {
  const OutputDomain domain(0.0, 1.0, 0.5);
  EXPECT_DOUBLE_EQ(normalizer(domain, 0.5, 1e-6), 1.0);
  EXPECT_DOUBLE_EQ(normalizer(domain, 0.0, 1e-6), 0.5);
}

TEST(NormalizerTest, PropertiesOnRandomInputs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double l = -10.0 + 20.0 * unit(rng);
    const double width = 0.01 + 10.0 * unit(rng);
    const double u = l + width;
    const OutputDomain domain(l, u, width * (0.01 + 0.99 * unit(rng)));
    const double b = std::exp(-4.0 + 8.0 * unit(rng)) * width;
    const double q = l + width * unit(rng);
    const double c = normalizer(domain, q, b);
    EXPECT_GT(c, 0.0);
    EXPECT_LT(c, 1.0);
    EXPECT_NEAR(c, normalizer(domain, u + l - q, b), 1e-14);
    // The boundary is the minimizer over q.
    EXPECT_LE(normalizer(domain, l, b), c + 1e-15);
    EXPECT_NEAR(normalizer(domain, u, b), normalizer(domain, l, b), 1e-15);
  }
}

TEST(DeltaCTest, SpanningSensitivityIsExactlyOne) {
  const OutputDomain domain(0.0, 1.0, 1.0);
  for (double b : {1e-3, 0.1, 1.0, 10.0, 1e4}) {
    EXPECT_EQ(delta_c(domain, b), 1.0);
    EXPECT_EQ(log_delta_c(domain, b), 0.0);
  }
}

TEST(DeltaCTest, PlugIn) {
  const OutputDomain domain(0.0, 1.0, 0.5);
  const double expected =
      (1.0 - std::exp(-1.0)) / (0.5 * (1.0 - std::exp(-2.0)));
  EXPECT_NEAR(delta_c(domain, 0.5), expected, 1e-15);
  EXPECT_NEAR(delta_c(domain, 0.5),
              normalizer(domain, 0.5, 0.5) / normalizer(domain, 0.0, 0.5),
              1e-15);
}

TEST(DeltaCTest, DominatesGridOfNeighbourRatios) {
  const OutputDomain domain(0.0, 1.0, 0.5);
  const double b = 0.5;
  double grid_max = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double q = 0.5 * i / 1000.0;
    grid_max = std::max(grid_max, normalizer(domain, q + 0.5, b) /
                                      normalizer(domain, q, b));
  }
  EXPECT_GE(delta_c(domain, b), grid_max - 1e-15);
  EXPECT_NEAR(delta_c(domain, b), grid_max, 1e-15);
}

TEST(DeltaCTest, AtLeastOneWithEqualityOnlyWhenSpanning) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double width = 0.1 + 5.0 * unit(rng);
    const OutputDomain domain(0.0, width, width * (0.01 + 0.98 * unit(rng)));
    const double b = std::exp(-3.0 + 6.0 * unit(rng)) * width;
    EXPECT_GT(delta_c(domain, b), 1.0);
    EXPECT_GE(log_delta_c(domain, b), 0.0);
  }
}

TEST(PdfTest, SupportAndMode) {
  const auto mech = MakeMechanism(0.0, 1.0, 0.5, 0.4);
  EXPECT_EQ(mech.pdf(0.3, -0.01), 0.0);
  EXPECT_EQ(mech.pdf(0.3, 1.01), 0.0);
  EXPECT_NEAR(mech.pdf(0.3, 0.3), 1.0 / (mech.normalizer(0.3) * 0.8), 1e-14);
}

TEST(PdfTest, IntegratesToOne) {
  for (double q : {0.0, 0.2, 0.5, 1.0}) {
    for (double b : {0.05, 0.4, 3.0}) {
      const auto mech = MakeMechanism(0.0, 1.0, 0.5, b);
      const double total = oracle::integrate_split(
          [&](double x) { return mech.pdf(q, x); }, 0.0, 1.0, q);
      EXPECT_NEAR(total, 1.0, 1e-10) << "q=" << q << " b=" << b;
    }
  }
}

TEST(CdfTest, EndpointsAndSymmetricMedian) {
  for (double b : {0.01, 0.3, 5.0}) {
    const auto mech = MakeMechanism(0.0, 1.0, 0.5, b);
    EXPECT_EQ(mech.cdf(0.2, 0.0), 0.0);
    EXPECT_EQ(mech.cdf(0.2, 1.0), 1.0);
    EXPECT_EQ(mech.cdf(0.2, -3.0), 0.0);
    EXPECT_EQ(mech.cdf(0.2, 4.0), 1.0);
    EXPECT_NEAR(mech.cdf(0.5, 0.5), 0.5, 1e-15);
  }
}

TEST(CdfTest, MatchesQuadratureOfPdf) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double l = -2.0 + 4.0 * unit(rng);
    const double u = l + 0.5 + 3.0 * unit(rng);
    const auto mech = MakeMechanism(l, u, 0.25, 0.05 + 2.0 * unit(rng));
    const double q = l + (u - l) * unit(rng);
    const double x = l + (u - l) * unit(rng);
    const double expected = oracle::integrate_split(
        [&](double t) { return mech.pdf(q, t); }, l, x, q);
    EXPECT_NEAR(mech.cdf(q, x), expected, 1e-10);
  }
}

TEST(CdfTest, StrictlyIncreasingInsideDomain) {
  const auto mech = MakeMechanism(0.0, 1.0, 0.5, 0.2);
  double previous = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double value = mech.cdf(0.3, i / 1000.0);
    EXPECT_GT(value, previous);
    previous = value;
  }
}

TEST(QuantileTest, EndpointsAndMedian) {
  const auto mech = MakeMechanism(0.0, 1.0, 0.5, 0.3);
  EXPECT_EQ(mech.quantile(0.7, 0.0), 0.0);
  EXPECT_EQ(mech.quantile(0.7, 1.0), 1.0);
  EXPECT_EQ(mech.quantile(0.5, 0.5), 0.5);
  EXPECT_THROW(mech.quantile(0.5, -0.01), InvalidArgument);
  EXPECT_THROW(mech.quantile(0.5, 1.01), InvalidArgument);
}

TEST(QuantileTest, MatchesRootFindingOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double l = -5.0 + 10.0 * unit(rng);
    const double u = l + 0.1 + 4.0 * unit(rng);
    const auto mech = MakeMechanism(l, u, 0.05, 0.01 + 3.0 * unit(rng));
    const double q = l + (u - l) * unit(rng);
    const double x = mech.quantile(q, 0.3);
    const double root =
        oracle::bisect([&](double t) { return mech.cdf(q, t); }, 0.3, l, u);
    EXPECT_NEAR(mech.cdf(q, x), 0.3, 1e-12);
    EXPECT_NEAR(x, root, 1e-9 * (u - l));
  }
}

TEST(QuantileTest, InvertsCdfAndIsMonotone) {
  for (double q : {0.0, 0.25, 0.9, 1.0}) {
    for (double b : {0.02, 0.5, 20.0}) {
      const auto mech = MakeMechanism(0.0, 1.0, 0.5, b);
      double previous = 0.0;
      for (int i = 0; i <= 1000; ++i) {
        const double p = i / 1000.0;
        const double x = mech.quantile(q, p);
        EXPECT_NEAR(mech.cdf(q, x), p, 1e-12) << "q=" << q << " b=" << b;
        EXPECT_GE(x, previous);
        previous = x;
      }
    }
  }
}

TEST(RandomTest, OpenUnitNeverHitsEndpoints) {
  struct Extreme {
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type value;
    result_type operator()() { return value; }
  };
  Extreme low{0};
  Extreme high{~std::uint64_t{0}};
  EXPECT_GT(uniform_open_unit(low), 0.0);
  EXPECT_LT(uniform_open_unit(high), 1.0);
}

TEST(SampleInverseTest, SupportAndDeterminism) {
  const auto mech = MakeMechanism(0.0, 1.0, 0.5, 2.0);
  DefaultRandomSource a(42);
  DefaultRandomSource b(42);
  for (int i = 0; i < 1000; ++i) {
    const double x = mech.sample_inverse(0.1, a);
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 1.0);
    EXPECT_EQ(x, mech.sample_inverse(0.1, b));
  }
  EXPECT_THROW(mech.sample_inverse(1.5, a), InvalidArgument);
}

TEST(SampleInverseTest, KolmogorovSmirnovAgainstCdf) {
  const auto mech = MakeMechanism(0.0, 1.0, 0.5, 0.3);
  DefaultRandomSource rng(2024);
  std::vector<double> samples(kNumSamples);
  for (auto& x : samples) x = mech.sample_inverse(0.2, rng);
  const double d = oracle::ks_statistic(
      samples, [&](double x) { return mech.cdf(0.2, x); });
  EXPECT_GT(oracle::ks_p_value(d, kNumSamples), 0.05) << "D=" << d;
}

TEST(SampleRejectionTest, MeanDrawsMatchesGeometric) {
  const auto mech = MakeMechanism(0.0, 1.0, 0.5, 0.8);
  const double q = 0.1;
  const double c = mech.normalizer(q);
  DefaultRandomSource rng(99);
  double total = 0.0;
  for (int i = 0; i < kNumSamples; ++i) {
    const auto draw = mech.sample_rejection(q, rng);
    EXPECT_GE(draw.value, 0.0);
    EXPECT_LE(draw.value, 1.0);
    EXPECT_GE(draw.draws, 1u);
    total += double(draw.draws);
  }
  const double mean = total / kNumSamples;
  const double standard_error = std::sqrt(1.0 - c) / c / std::sqrt(kNumSamples);
  EXPECT_NEAR(mean, 1.0 / c, 3.0 * standard_error);
}

TEST(SampleRejectionTest, MatchesInverseTransformDistribution) {
  const auto mech = MakeMechanism(0.0, 1.0, 0.5, 0.5);
  DefaultRandomSource rng_a(1);
  DefaultRandomSource rng_b(2);
  std::vector<double> inverse(kNumSamples);
  std::vector<double> rejection(kNumSamples);
  for (int i = 0; i < kNumSamples; ++i) {
    inverse[i] = mech.sample_inverse(0.7, rng_a);
    rejection[i] = mech.sample_rejection(0.7, rng_b).value;
  }
  const double d = oracle::ks_two_sample_statistic(inverse, rejection);
  EXPECT_GT(oracle::ks_p_value(d, kNumSamples / 2.0), 0.01) << "D=" << d;
}

TEST(SampleTruncatedTest, ProjectsOntoBounds) {
  const OutputDomain domain(0.0, 5.0, 1.0);
  EXPECT_EQ(truncate_to_domain(domain, -1.71), 0.0);
  EXPECT_EQ(truncate_to_domain(domain, 2.31), 2.31);
  EXPECT_EQ(truncate_to_domain(domain, 7.0), 5.0);
}

TEST(SampleTruncatedTest, LowerPointMassMatchesLaplaceTail) {
  const OutputDomain domain(0.0, 1.0, 0.5);
  const double q = 0.1;
  const double b = 0.3;
  DefaultRandomSource rng(17);
  int at_lower = 0;
  for (int i = 0; i < kNumSamples; ++i) {
    const double x = sample_truncated(domain, q, b, rng);
    ASSERT_GE(x, 0.0);
    ASSERT_LE(x, 1.0);
    if (x == 0.0) ++at_lower;
  }
  const double p = 0.5 * std::exp(-(q - 0.0) / b);
  const double standard_error = std::sqrt(p * (1.0 - p) / kNumSamples);
  EXPECT_NEAR(double(at_lower) / kNumSamples, p, 3.0 * standard_error);
}

TEST(SamplerNameTest, ParsesKnownNames) {
  EXPECT_EQ(parse_sampler("inverse"), Sampler::kInverse);
  EXPECT_EQ(parse_sampler("rejection"), Sampler::kRejection);
  EXPECT_EQ(parse_sampler("truncated"), Sampler::kTruncated);
  EXPECT_THROW(parse_sampler("gibbs"), InvalidArgument);
}

}  // namespace
}  // namespace bounded_laplace

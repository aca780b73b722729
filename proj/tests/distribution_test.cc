// Copyright 2026 The Hiring Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hiring/distribution.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hiring {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Distribution> AllLaws() {
  return {Distribution::Uniform01(), Distribution::Exponential(1),
          Distribution::Exponential(2.5), Distribution::Pareto(3, 1),
          Distribution::Pareto(1.5, 0.2),
          Distribution::Empirical({0.1, 0.4, 0.5, 2.0, 3.5})};
}

TEST(DistributionTest, SampleSupport) {
  for (const Distribution& d : AllLaws()) {
    RngStream rng(11, 0);
    for (int k = 0; k < 10000; ++k) {
      const double x = d.Sample(rng);
      ASSERT_GE(x, d.SupportMin()) << d.Name();
      ASSERT_LE(x, d.SupportMax()) << d.Name();
    }
  }
  RngStream a(7, 0);
  RngStream b(7, 0);
  EXPECT_EQ(Distribution::Exponential(1).Sample(a),
            Distribution::Exponential(1).Sample(b));
}

// One-sample Kolmogorov-Smirnov at the 1% level: sqrt(m) D < 1.63.
TEST(DistributionTest, KolmogorovSmirnov) {
  const int m = 20000;
  for (const Distribution& d : AllLaws()) {
    RngStream rng(3, 1);
    std::vector<double> xs(m);
    for (double& x : xs) x = d.Sample(rng);
    std::sort(xs.begin(), xs.end());
    double dmax = 0;
    for (int k = 0; k < m; ++k) {
      const double f = d.Cdf(xs[k]);
      dmax = std::max({dmax, std::fabs(f - double(k) / m),
                       std::fabs(double(k + 1) / m - f)});
    }
    EXPECT_LT(std::sqrt(double(m)) * dmax, 1.63) << d.Name();
  }
}

TEST(DistributionTest, CdfExamples) {
  EXPECT_DOUBLE_EQ(Distribution::Uniform01().Cdf(0.3), 0.3);
  EXPECT_NEAR(Distribution::Exponential(1).Cdf(std::log(2.0)), 0.5, 1e-15);
  for (const Distribution& d : AllLaws()) EXPECT_EQ(d.Cdf(-1), 0) << d.Name();
}

TEST(DistributionTest, QuantileExamples) {
  EXPECT_DOUBLE_EQ(Distribution::Uniform01().Quantile(0.25), 0.25);
  EXPECT_NEAR(Distribution::Exponential(1).Quantile(0.5), 0.693147, 1e-6);
  EXPECT_EQ(Distribution::Exponential(1).Quantile(1), kInf);
  EXPECT_EQ(Distribution::Pareto(3, 1).Quantile(1), kInf);
  EXPECT_EQ(Distribution::Uniform01().Quantile(1), 1);
  EXPECT_THROW(Distribution::Uniform01().Quantile(0), std::domain_error);
  EXPECT_THROW(Distribution::Uniform01().Quantile(1.5), std::domain_error);
}

TEST(DistributionTest, QuantileInvertsCdf) {
  for (const Distribution& d : AllLaws()) {
    for (double q : {1e-6, 0.01, 0.2, 0.5, 0.77, 0.999}) {
      const double x = d.Quantile(q);
      EXPECT_NEAR(d.Cdf(x), q, 1e-12) << d.Name() << " q=" << q;
      EXPECT_NEAR(d.QuantileByBisection(q), x, 1e-9 * std::max(1.0, x))
          << d.Name() << " q=" << q;
    }
  }
}

TEST(DistributionTest, ConditionalExpectationExamples) {
  const Distribution u = Distribution::Uniform01();
  EXPECT_DOUBLE_EQ(u.ConditionalExpectation(0.25, 0.5), 0.375);
  EXPECT_DOUBLE_EQ(u.ConditionalExpectation(0, 1), 0.5);
  EXPECT_NEAR(Distribution::Exponential(1).ConditionalExpectation(0, kInf), 1,
              1e-15);
  EXPECT_THROW(u.ConditionalExpectation(2, 3), ZeroMassError);
  EXPECT_THROW(u.ConditionalExpectation(0.5, 0.5), std::domain_error);
}

TEST(DistributionTest, ConditionalExpectationMatchesQuadrature) {
  for (const Distribution& d : AllLaws()) {
    const std::vector<double> cuts = {d.Quantile(0.05), d.Quantile(0.3),
                                      d.Quantile(0.6), d.Quantile(0.95)};
    for (size_t a = 0; a < cuts.size(); ++a) {
      for (size_t b = a + 1; b < cuts.size(); ++b) {
        const double closed = d.ConditionalExpectation(cuts[a], cuts[b]);
        EXPECT_NEAR(d.ConditionalExpectationByQuadrature(cuts[a], cuts[b]),
                    closed, 1e-9 * std::max(1.0, closed))
            << d.Name();
      }
      const double tail = d.ConditionalExpectation(cuts[a], kInf);
      EXPECT_NEAR(d.ConditionalExpectationByQuadrature(cuts[a], kInf), tail,
                  1e-8 * std::max(1.0, tail))
          << d.Name();
    }
  }
}

// E[x] = P(x <= t) E[x | x <= t] + P(x > t) E[x | x > t].
TEST(DistributionTest, LawOfTotalExpectation) {
  for (const Distribution& d : AllLaws()) {
    for (double q : {0.1, 0.5, 0.9}) {
      const double t = d.Quantile(q);
      const double total = q * d.ConditionalExpectation(-kInf, t) +
                           (1 - q) * d.ConditionalExpectation(t, kInf);
      EXPECT_NEAR(total, d.Mean(), 1e-12 * std::max(1.0, d.Mean()))
          << d.Name();
    }
  }
}

TEST(DistributionTest, SurvivalPowerExamples) {
  const Distribution u = Distribution::Uniform01();
  EXPECT_DOUBLE_EQ(u.SurvivalPowerIntegral(3), 0.25);
  EXPECT_DOUBLE_EQ(u.SurvivalPowerIntegral(1), 0.5);
  EXPECT_DOUBLE_EQ(Distribution::Exponential(1).SurvivalPowerIntegral(2), 0.5);
}

TEST(DistributionTest, SurvivalPowerMatchesQuadrature) {
  for (const Distribution& d : AllLaws()) {
    for (int64_t m : {1, 2, 5, 17, 64}) {
      const double closed = d.SurvivalPowerIntegral(m);
      EXPECT_NEAR(d.SurvivalPowerIntegralByQuadrature(m), closed,
                  1e-9 * std::max(1.0, closed))
          << d.Name() << " m=" << m;
    }
  }
}

TEST(DistributionTest, SurvivalPowerDecreasing) {
  for (const Distribution& d : AllLaws()) {
    for (int64_t m = 1; m < 50; ++m) {
      EXPECT_GT(d.SurvivalPowerIntegral(m), d.SurvivalPowerIntegral(m + 1) -
                                                1e-15)
          << d.Name();
    }
  }
}

TEST(DistributionTest, EmpiricalPiecewiseLinear) {
  const Distribution d = Distribution::Empirical({3, 1, 2});
  EXPECT_EQ(d.knots(), (std::vector<double>{1, 2, 3}));
  EXPECT_DOUBLE_EQ(d.Cdf(1), 0);
  EXPECT_DOUBLE_EQ(d.Cdf(1.5), 0.25);
  EXPECT_DOUBLE_EQ(d.Cdf(2), 0.5);
  EXPECT_DOUBLE_EQ(d.Cdf(3), 1);
  EXPECT_DOUBLE_EQ(d.Quantile(0.75), 2.5);
  EXPECT_DOUBLE_EQ(d.Mean(), 2);
}

TEST(DistributionTest, RejectsBadParameters) {
  EXPECT_THROW(Distribution::Exponential(0), std::invalid_argument);
  EXPECT_THROW(Distribution::Exponential(-1), std::invalid_argument);
  EXPECT_THROW(Distribution::Pareto(1, 1), std::invalid_argument);
  EXPECT_THROW(Distribution::Pareto(2, 0), std::invalid_argument);
  EXPECT_THROW(Distribution::Empirical({1}), std::invalid_argument);
  EXPECT_THROW(Distribution::Empirical({1, 1}), std::invalid_argument);
  EXPECT_THROW(Distribution::Empirical({-1, 1}), std::invalid_argument);
}

TEST(DistributionTest, NamesAreCsvSafe) {
  for (const Distribution& d : AllLaws()) {
    EXPECT_EQ(d.Name().find(','), std::string::npos) << d.Name();
  }
  EXPECT_EQ(Distribution::Pareto(3, 1).Name(), "pareto(shape=3 scale=1)");
}

}  // namespace
}  // namespace hiring

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

#include "hiring/markov.h"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

namespace hiring {
namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

TEST(MhatTest, ClosedFormValues) {
  const std::vector<double> v = MhatVisits(0.75, 3);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_NEAR(v[2], 4.0 / 3, 1e-15);
  EXPECT_NEAR(v[1], 16.0 / 9, 1e-15);
  EXPECT_NEAR(v[0], 13.0 / 9, 1e-15);
  EXPECT_EQ(v[3], 1);
  for (double x : v) EXPECT_LE(x, 2);
  EXPECT_THROW(MhatVisits(0.4, 3), std::domain_error);
  EXPECT_THROW(MhatVisits(0.75, 0), std::domain_error);
}

TEST(MhatTest, BoundedByInverseDrift) {
  const double p = 1 - std::exp(-1.0);
  EXPECT_NEAR(1 / (2 * p - 1), std::exp(1.0) / (std::exp(1.0) - 2), 1e-12);
  EXPECT_NEAR(1 / (2 * p - 1), 3.78443, 1e-5);
  for (int64_t k : {1, 2, 5, 40}) {
    for (double x : MhatVisits(p, k)) EXPECT_LE(x, 1 / (2 * p - 1) + 1e-12);
  }
}

// Visits satisfy flow balance: v_j = (inflow into j), v_0 counting the start.
TEST(MhatTest, RecurrenceResidualsInQuad) {
  Quad worst = 0;
  for (const char* ps : {"0.51", "0.6", "0.75", "0.632120558828557678", "0.9",
                         "1"}) {
    const Quad p(ps);
    for (int64_t k : {1, 2, 3, 4, 7, 20, 60}) {
      const std::vector<Quad> v = MhatVisitProfile<Quad>(p, k);
      auto up = [&](int64_t j) { return j == 0 ? Quad(1) : p; };
      auto down = [&](int64_t j) { return j == 0 ? Quad(0) : 1 - p; };
      for (int64_t j = 0; j <= k; ++j) {
        Quad inflow = j == 0 ? Quad(1) : Quad(0);
        if (j >= 1) inflow += up(j - 1) * v[j - 1];
        if (j + 1 < k) inflow += down(j + 1) * v[j + 1];
        using std::abs;
        worst = std::max(worst, Quad(abs(inflow - v[j]) / v[j]));
      }
      EXPECT_EQ(v[k], 1);
    }
  }
  EXPECT_LT(worst, Quad("1e-20")) << worst;
}

TEST(NhatTest, ClosedFormValues) {
  for (int64_t k : {1, 3, 6, 12}) {
    EXPECT_NEAR(static_cast<double>(NhatAbTransitions(0.5, k)),
                k + std::pow(2.0 / 3, k), 1e-14);
    const auto profile = NhatAbProfile<long double>(0.7L, k);
    EXPECT_NEAR(static_cast<double>(profile.b[k]), 0, 1e-15);
    EXPECT_NEAR(static_cast<double>(profile.a[0]),
                static_cast<double>(1 + profile.b[0]), 1e-14);
  }
  EXPECT_THROW(NhatAbTransitions(0.3, 2), std::domain_error);
}

TEST(NhatTest, RecurrenceResidualsInQuad) {
  Quad worst = 0;
  for (const char* ps : {"0.34", "0.5", "0.632120558828557678", "0.75", "1"}) {
    const Quad p(ps);
    for (int64_t k : {1, 2, 3, 6, 15, 50}) {
      const NhatProfile<Quad> f = NhatAbProfile<Quad>(p, k);
      auto rel = [](const Quad& lhs, const Quad& rhs) {
        using std::abs;
        return Quad(abs(lhs - rhs) / std::max(Quad(1), Quad(abs(rhs))));
      };
      worst = std::max(worst, rel(f.a[0], 1 + f.b[0]));
      worst = std::max(worst, rel(f.b[k], 0));
      worst = std::max(worst, rel(f.h, f.a[0]));
      for (int64_t j = 1; j <= k; ++j) {
        worst = std::max(worst,
                         rel(f.a[j], p * (1 + f.b[j]) + (1 - p) * f.a[j - 1]));
      }
      for (int64_t j = 0; j < k; ++j) {
        worst = std::max(worst, rel(f.b[j], (f.b[j + 1] + f.a[j + 1]) / 2));
      }
    }
  }
  EXPECT_LT(worst, Quad("1e-20")) << worst;
}

TEST(NhatTest, BjBound) {
  const double p = 1 - std::exp(-1.0);
  EXPECT_NEAR(NhatBjTransitions(p).transitions, 0.7052070335, 1e-9);
  EXPECT_NEAR(NhatBjTransitions(1).transitions, 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(NhatBjTransitions(0.5).transitions, 1);
  EXPECT_DOUBLE_EQ(NhatBjTransitions(0.5).visits, 2);
}

TEST(SimulateChainTest, MhatAgrees) {
  RngStream rng(1, 0);
  const ChainStats s = SimulateChain({ChainFamily::kMHat, 0.75, 3}, 200000, rng);
  const std::vector<double> v = MhatVisits(0.75, 3);
  for (int j = 0; j <= 3; ++j) {
    EXPECT_NEAR(s.visits_mean[j], v[j], 4 * s.visits_stderr[j] + 1e-12) << j;
  }
  EXPECT_EQ(s.absorbing_visits_min, 1);
  EXPECT_EQ(s.absorbing_visits_max, 1);
}

TEST(SimulateChainTest, NhatAgrees) {
  RngStream rng(2, 0);
  const ChainStats s = SimulateChain({ChainFamily::kNHat, 0.5, 6}, 200000, rng);
  EXPECT_NEAR(s.ab_mean, 6 + std::pow(2.0 / 3, 6), 4 * s.ab_stderr);
  EXPECT_EQ(s.absorbing_visits_min, 1);
  EXPECT_EQ(s.absorbing_visits_max, 1);
  const BjBound bound = NhatBjTransitions(0.5);
  for (size_t j = 0; j < s.ba_mean.size(); ++j) {
    EXPECT_LE(s.ba_mean[j], bound.transitions + 4 * s.ba_stderr[j]);
  }
}

TEST(SimulateChainTest, StepLimitAndDomain) {
  RngStream rng(3, 0);
  EXPECT_THROW(SimulateChain({ChainFamily::kMHat, 0.51, 30}, 10, rng, 5),
               StepLimitError);
  EXPECT_THROW(SimulateChain({ChainFamily::kMHat, 0.4, 3}, 10, rng),
               std::domain_error);
  const ChainStats u =
      SimulateChain({ChainFamily::kMUniform, 0, 5}, 1000, rng);
  EXPECT_EQ(u.visits_mean.size(), 6u);
}

}  // namespace
}  // namespace hiring

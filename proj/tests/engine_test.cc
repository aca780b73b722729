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

#include "hiring/engine.h"

#include <gtest/gtest.h>

#include <cmath>

#include "hiring/analysis.h"
#include "hiring/policies.h"

namespace hiring {
namespace {

// Replays a fixed list of decisions.
class ScriptedPolicy : public Policy {
 public:
  explicit ScriptedPolicy(std::vector<Decision> script)
      : script_(std::move(script)) {}
  Decision Step(int64_t i, double) override {
    return static_cast<size_t>(i - 1) < script_.size() ? script_[i - 1]
                                                       : Decision{};
  }
  std::string Name() const override { return "scripted"; }

 private:
  std::vector<Decision> script_;
};

TEST(EngineTest, OptIsRunningMinimumSum) {
  ScriptedPolicy p({{1, false}, {1, false}, {1, true}});
  const EpisodeResult r = RunEpisodeOnSequence(p, {0.9, 0.3, 0.5});
  EXPECT_DOUBLE_EQ(r.opt_cost, 1.5);
  EXPECT_DOUBLE_EQ(r.alg_cost, 1.7);
  EXPECT_EQ(r.hires, 3);
  EXPECT_EQ(r.max_concurrency, 1);
}

TEST(EngineTest, Alg1SingleStep) {
  Alg1Policy p(1);
  const EpisodeResult r = RunEpisodeOnSequence(p, {0.7});
  EXPECT_EQ(r.hires, 1);
  EXPECT_DOUBLE_EQ(r.alg_cost, 2.8);
}

TEST(EngineTest, Alg1SmokeRun) {
  Alg1Policy p(10);
  RngStream rng(5, 0);
  const EpisodeResult r = RunEpisode(p, Distribution::Uniform01(), 10, rng);
  EXPECT_GE(r.max_concurrency, 1);
}

TEST(EngineTest, GapRaisesCoverageViolation) {
  ScriptedPolicy p({{1, false}, {0, false}, {1, true}});
  try {
    RunEpisodeOnSequence(p, {0.1, 0.2, 0.3});
    FAIL() << "expected a coverage violation";
  } catch (const CoverageViolation& e) {
    EXPECT_EQ(e.step(), 2);
  }
}

TEST(EngineTest, EarlyStopRaisesCoverageViolation) {
  ScriptedPolicy p({{2, true}});
  EXPECT_THROW(RunEpisodeOnSequence(p, {0.1, 0.2, 0.3}), CoverageViolation);
}

TEST(EngineTest, StopSkipsPolicy) {
  ScriptedPolicy p({{3, true}, {5, false}, {5, false}});
  EngineOptions options;
  options.record_contracts = true;
  const EpisodeResult r = RunEpisodeOnSequence(p, {0.5, 0.1, 0.1}, options);
  EXPECT_EQ(r.hires, 1);
  ASSERT_EQ(r.contracts.size(), 1u);
  EXPECT_EQ(r.contracts[0].start, 1);
  EXPECT_EQ(r.contracts[0].duration, 3);
  EXPECT_DOUBLE_EQ(r.alg_cost, 1.5);
}

TEST(EngineTest, TruncationBillsOnlyInsideHorizon) {
  ScriptedPolicy full({{10, true}});
  ScriptedPolicy cut({{10, true}});
  EngineOptions options;
  options.truncate_at_n = true;
  EXPECT_DOUBLE_EQ(RunEpisodeOnSequence(full, {0.5, 0.5}).alg_cost, 5);
  EXPECT_DOUBLE_EQ(RunEpisodeOnSequence(cut, {0.5, 0.5}, options).alg_cost,
                   1);
}

TEST(EngineTest, ConcurrencyCountsOverlaps) {
  ScriptedPolicy p({{3, false}, {3, false}, {1, true}});
  EXPECT_EQ(RunEpisodeOnSequence(p, {1, 1, 1}).max_concurrency, 3);
}

TEST(EngineTest, PairedStatsMergeMatchesSequential) {
  PairedStats all;
  PairedStats left;
  PairedStats right;
  RngStream rng(9, 9);
  for (int k = 0; k < 1000; ++k) {
    const double a = rng.NextUniform();
    const double b = a + rng.NextUniform();
    all.Add(a, b);
    (k < 377 ? left : right).Add(a, b);
  }
  left.Merge(right);
  EXPECT_EQ(left.count(), all.count());
  EXPECT_NEAR(left.mean_a(), all.mean_a(), 1e-14);
  EXPECT_NEAR(left.var_b(), all.var_b(), 1e-13);
  EXPECT_NEAR(left.cov(), all.cov(), 1e-13);
  EXPECT_NEAR(all.var_a(), 1.0 / 12, 0.01);
  EXPECT_NEAR(all.cov(), 1.0 / 12, 0.01);
}

TEST(EngineTest, SingleReplicationHasNoStderr) {
  PolicySpec spec;
  spec.name = "alg1";
  const Distribution u = Distribution::Uniform01();
  const SimulationReport r = RunBatch(MakePolicyFactory(spec, u, 10), u, 10, 1,
                                      3);
  EXPECT_FALSE(r.stderr_cost.has_value());
  EXPECT_FALSE(r.stderr_opt.has_value());
  EXPECT_FALSE(r.stderr_ratio.has_value());
}

TEST(EngineTest, BatchIsDeterministic) {
  PolicySpec spec;
  spec.name = "alg2";
  const Distribution u = Distribution::Uniform01();
  const PolicyFactory f = MakePolicyFactory(spec, u, 50);
  const SimulationReport a = RunBatch(f, u, 50, 200, 42);
  const SimulationReport b = RunBatch(f, u, 50, 200, 42);
  EXPECT_EQ(a.mean_cost, b.mean_cost);
  EXPECT_EQ(a.mean_opt, b.mean_opt);
  EXPECT_NE(a.mean_cost, RunBatch(f, u, 50, 200, 43).mean_cost);
}

TEST(EngineTest, MeanOptUniform) {
  PolicySpec spec;
  spec.name = "alg2";
  const Distribution u = Distribution::Uniform01();
  const SimulationReport r =
      RunBatch(MakePolicyFactory(spec, u, 100), u, 100, 20000, 1);
  EXPECT_NEAR(r.mean_opt, OptUniform(100), 3 * *r.stderr_opt);
}

TEST(EngineTest, MeanOptExponential) {
  PolicySpec spec;
  spec.name = "alg3";
  const Distribution d = Distribution::Exponential(1);
  const SimulationReport r =
      RunBatch(MakePolicyFactory(spec, d, 50), d, 50, 20000, 1);
  EXPECT_NEAR(r.mean_opt, Harmonic(50), 3 * *r.stderr_opt);
}

TEST(EngineTest, CompareSamePolicyGivesRatioOne) {
  PolicySpec spec;
  spec.name = "alg1";
  const Distribution u = Distribution::Uniform01();
  const PolicyFactory f = MakePolicyFactory(spec, u, 64);
  const PairedComparison c = ComparePolicies(f, f, u, 64, 100, 5);
  EXPECT_DOUBLE_EQ(c.ratio, 1);
  EXPECT_NEAR(*c.stderr_difference, 0, 1e-12);
}

}  // namespace
}  // namespace hiring

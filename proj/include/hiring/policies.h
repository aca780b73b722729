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

#ifndef HIRING_POLICIES_H_
#define HIRING_POLICIES_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hiring/distribution.h"
#include "hiring/dp_optimal.h"
#include "hiring/engine.h"

namespace hiring {

// Known horizon, or nullopt when the policy must run without stop checks.
using Horizon = std::optional<int64_t>;

// Threshold levels are capped so durations stay within int64. Level L means
// threshold 2^-L (or quantile level 2^-L).
inline constexpr int kMaxLevel = 60;

// Uniform costs. Threshold tau = 2^-level, hire 4/tau on x <= tau.
class Alg1Policy : public Policy {
 public:
  explicit Alg1Policy(Horizon n);
  Decision Step(int64_t i, double x) override;
  std::string Name() const override { return "alg1"; }

  int level() const { return level_; }
  int64_t countdown() const { return t_; }
  // Number of distinct threshold levels seen so far.
  int levels_visited() const;

 private:
  Horizon n_;
  int level_ = 0;
  int64_t t_ = 1;
  uint64_t visited_mask_ = 1;
};

// Uniform costs with budget parameter c: repeated halving on acceptance,
// hire ceil(2c/tau), wait ceil(c/tau).
class Alg2Policy : public Policy {
 public:
  Alg2Policy(Horizon n, double c);
  Decision Step(int64_t i, double x) override;
  std::string Name() const override;

  int level() const { return level_; }
  int64_t countdown() const { return t_; }

 private:
  Horizon n_;
  double c_;
  int level_ = 0;
  int64_t t_ = 1;
};

// sum_{i=0}^{level} ceil(c 2^i): steps from a hire until the threshold is
// back at 1 and the next applicant is certainly hired.
int64_t Alg2Budget(double c, int level);
// True if every hire at levels 1..max_level lasts until the next certain one.
bool Alg2BudgetHolds(double c, int max_level);

// Arbitrary known law: thresholds are the quantiles delta_{2^-level}.
class Alg3Policy : public Policy {
 public:
  Alg3Policy(const Distribution& d, Horizon n);
  Decision Step(int64_t i, double x) override;
  std::string Name() const override { return "alg3"; }

  int level() const { return level_; }

 private:
  double Threshold(int level);

  const Distribution d_;
  Horizon n_;
  int level_ = 0;
  int64_t t_ = 1;
  std::vector<double> thresholds_;
};

// Unknown law: alternate sampling (estimate tau as the sample minimum) and
// waiting phases whose lengths double with the level j.
class Alg4Policy : public Policy {
 public:
  Alg4Policy(Horizon n, int64_t lambda);
  Decision Step(int64_t i, double x) override;
  std::string Name() const override;

  int level() const { return j_; }
  int max_level() const { return max_level_; }
  int64_t t_sample() const { return t_sample_; }
  int64_t t_wait() const { return t_wait_; }
  // Waiting phases at levels >= 1 that ended in a hire, or expired.
  int64_t phases_hired() const { return phases_hired_; }
  int64_t phases_expired() const { return phases_expired_; }

 private:
  void Enter(int level);

  Horizon n_;
  int64_t lambda_;
  double tau_;
  int64_t t_sample_ = 0;
  int64_t t_wait_ = 1;
  int j_ = 0;
  int max_level_ = 0;
  int64_t phases_hired_ = 0;
  int64_t phases_expired_ = 0;
};

// Sequential employment. thresholds[k] = tau_k for k = 0..n-1, where tau_0 is
// the sentinel tau_1 + 1. Hires for the rest of the horizon on x < tau_{n-i},
// otherwise for one step.
class Alg5Policy : public Policy {
 public:
  Alg5Policy(std::shared_ptr<const std::vector<double>> thresholds,
             int64_t n);
  Decision Step(int64_t i, double x) override;
  std::string Name() const override { return "alg5"; }

 private:
  std::shared_ptr<const std::vector<double>> thresholds_;
  int64_t n_;
};

// Builds tau_0..tau_{n-1} from the sequential recursion.
std::shared_ptr<const std::vector<double>> Alg5Thresholds(
    const Distribution& d, int64_t n);

class TableMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Table rows C(i, .) for i = 0..n, as produced by ToLongDoubleRows.
using DpCostRows = std::vector<std::vector<long double>>;

// Optimal online decision with n - i + 1 steps left, of which covered_ahead
// are already paid for. Ties go to the shorter duration, waiting first.
Decision DpPolicyStep(const DpCostRows& table, int64_t n, int64_t i,
                      int64_t covered_ahead, double x);

class DpPolicy : public Policy {
 public:
  // Throws TableMismatchError unless the table has horizon n.
  DpPolicy(std::shared_ptr<const DpCostRows> table, int64_t n);
  Decision Step(int64_t i, double x) override;
  std::string Name() const override { return "dp"; }

 private:
  std::shared_ptr<const DpCostRows> table_;
  int64_t n_;
  int64_t frontier_ = 0;
};

// Doubles every base hire and hides the applicants of the first half of each
// doubled contract from the base, which then runs on its own slower clock.
// At most two contracts are active at once as long as every base hire lasts
// at least as long as what remains of the previous one. alg1, alg2 and alg3
// satisfy this; alg4 does not after it falls more than one level.
class TwoConcurrentWrapper : public Policy {
 public:
  TwoConcurrentWrapper(std::unique_ptr<Policy> base, Horizon n);
  Decision Step(int64_t i, double x) override;
  std::string Name() const override;

 private:
  std::unique_ptr<Policy> base_;
  Horizon n_;
  int64_t base_clock_ = 0;
  int64_t idle_ = 0;
};

// Policy selection as it appears in configs.
struct PolicySpec {
  std::string name;  // alg1 | alg2 | alg3 | alg4 | alg5 | dp
  double c = 0.75;
  int64_t lambda = 3;
  bool two_concurrent = false;
  // Drops every stop check; requires two_concurrent.
  bool unknown_n = false;
  DpOptions dp;
};

// Every problem with the spec for this law and horizon; empty when valid.
std::vector<std::string> ValidatePolicySpec(const PolicySpec& spec,
                                            const Distribution& d, int64_t n);

// Throws std::invalid_argument with the joined validation errors. Shared
// tables (alg5 thresholds, DP rows) are computed once here.
PolicyFactory MakePolicyFactory(const PolicySpec& spec, const Distribution& d,
                                int64_t n);

}  // namespace hiring

#endif  // HIRING_POLICIES_H_

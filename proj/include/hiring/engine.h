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

#ifndef HIRING_ENGINE_H_
#define HIRING_ENGINE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hiring/distribution.h"
#include "hiring/rng.h"

namespace hiring {

// What a policy does with the applicant at the current step. A duration of 0
// means no hire. `stop` promises that the contracts booked so far cover every
// remaining step.
struct Decision {
  int64_t duration = 0;
  bool stop = false;
};

// Online hiring policy. Steps are 1-based and fed in order.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual Decision Step(int64_t i, double x) = 0;
  virtual std::string Name() const = 0;
};

using PolicyFactory = std::function<std::unique_ptr<Policy>()>;

// Covers steps start .. start + duration - 1.
struct Contract {
  int64_t start = 0;
  int64_t duration = 0;
  double unit_cost = 0;
};

class CoverageViolation : public std::runtime_error {
 public:
  CoverageViolation(const std::string& what, int64_t step, uint64_t seed,
                    uint64_t stream)
      : std::runtime_error(what), step_(step), seed_(seed), stream_(stream) {}

  int64_t step() const { return step_; }
  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

 private:
  int64_t step_;
  uint64_t seed_;
  uint64_t stream_;
};

struct EngineOptions {
  // Bill min(duration, n - start + 1) instead of the full contract.
  bool truncate_at_n = false;
  // Keep every contract in the episode result.
  bool record_contracts = false;
};

struct EpisodeResult {
  double alg_cost = 0;
  double opt_cost = 0;
  int64_t hires = 0;
  int64_t max_concurrency = 0;
  std::vector<Contract> contracts;
};

EpisodeResult RunEpisode(Policy& policy, const Distribution& d, int64_t n,
                         RngStream& rng, const EngineOptions& options = {});

// Same as RunEpisode on a fixed cost sequence; n = costs.size().
EpisodeResult RunEpisodeOnSequence(Policy& policy,
                                   const std::vector<double>& costs,
                                   const EngineOptions& options = {});

// Mean, variance and covariance accumulator that merges associatively.
class PairedStats {
 public:
  void Add(double a, double b);
  void Merge(const PairedStats& other);

  int64_t count() const { return count_; }
  double mean_a() const { return mean_a_; }
  double mean_b() const { return mean_b_; }
  // Sample variances and covariance; need count >= 2.
  double var_a() const;
  double var_b() const;
  double cov() const;

 private:
  int64_t count_ = 0;
  double mean_a_ = 0;
  double mean_b_ = 0;
  double m2_a_ = 0;
  double m2_b_ = 0;
  double c_ab_ = 0;
};

struct SimulationReport {
  std::string policy;
  std::string distribution;
  int64_t n = 0;
  int64_t replications = 0;
  uint64_t seed = 0;
  double mean_cost = 0;
  // Absent when replications == 1.
  std::optional<double> stderr_cost;
  double mean_opt = 0;
  std::optional<double> stderr_opt;
  double ratio_of_means = 0;
  // Delta-method standard error of ratio_of_means, using the pairing.
  std::optional<double> stderr_ratio;
  int64_t max_concurrency = 0;
  double mean_hires = 0;
};

// Runs reps episodes on streams (seed, 0) .. (seed, reps - 1). Alg and opt
// share each sequence.
SimulationReport RunBatch(const PolicyFactory& factory, const Distribution& d,
                          int64_t n, int64_t reps, uint64_t seed,
                          const EngineOptions& options = {});

// Ratio of mean booked costs of two policies run on the same sequences.
struct PairedComparison {
  double mean_a = 0;
  double mean_b = 0;
  double ratio = 0;
  std::optional<double> stderr_ratio;
  std::optional<double> stderr_difference;
};

PairedComparison ComparePolicies(const PolicyFactory& a,
                                 const PolicyFactory& b, const Distribution& d,
                                 int64_t n, int64_t reps, uint64_t seed,
                                 const EngineOptions& options = {});

}  // namespace hiring

#endif  // HIRING_ENGINE_H_

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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>

namespace hiring {
namespace {

template <typename NextCost>
EpisodeResult Run(Policy& policy, int64_t n, NextCost next_cost,
                  const EngineOptions& options, uint64_t seed,
                  uint64_t stream) {
  if (n < 1) throw std::invalid_argument("horizon must be >= 1");
  EpisodeResult result;
  std::priority_queue<int64_t, std::vector<int64_t>, std::greater<int64_t>>
      active_ends;
  int64_t frontier = 0;
  double running_min = std::numeric_limits<double>::infinity();
  bool stopped = false;
  for (int64_t i = 1; i <= n; ++i) {
    const double x = next_cost();
    running_min = std::min(running_min, x);
    result.opt_cost += running_min;
    if (stopped) continue;

    while (!active_ends.empty() && active_ends.top() < i) active_ends.pop();
    const Decision decision = policy.Step(i, x);
    if (decision.duration < 0) {
      throw std::logic_error(policy.Name() + " returned a negative duration");
    }
    if (decision.duration > 0) {
      const int64_t end = i + decision.duration - 1;
      const int64_t billed =
          options.truncate_at_n ? std::min(decision.duration, n - i + 1)
                                : decision.duration;
      result.alg_cost += x * static_cast<double>(billed);
      ++result.hires;
      frontier = std::max(frontier, end);
      active_ends.push(end);
      if (options.record_contracts) {
        result.contracts.push_back({i, decision.duration, x});
      }
    }
    result.max_concurrency = std::max<int64_t>(result.max_concurrency,
                                               active_ends.size());
    if (frontier < i) {
      throw CoverageViolation(
          policy.Name() + " left step " + std::to_string(i) + " uncovered",
          i, seed, stream);
    }
    if (decision.stop) {
      if (frontier < n) {
        throw CoverageViolation(policy.Name() + " stopped at step " +
                                    std::to_string(i) +
                                    " without covering the horizon",
                                i, seed, stream);
      }
      stopped = true;
    }
  }
  return result;
}

}  // namespace

EpisodeResult RunEpisode(Policy& policy, const Distribution& d, int64_t n,
                         RngStream& rng, const EngineOptions& options) {
  return Run(
      policy, n, [&] { return d.Sample(rng); }, options, rng.seed(),
      rng.stream());
}

EpisodeResult RunEpisodeOnSequence(Policy& policy,
                                   const std::vector<double>& costs,
                                   const EngineOptions& options) {
  size_t next = 0;
  return Run(
      policy, static_cast<int64_t>(costs.size()),
      [&] { return costs[next++]; }, options, 0, 0);
}

void PairedStats::Add(double a, double b) {
  ++count_;
  const double da = a - mean_a_;
  const double db = b - mean_b_;
  mean_a_ += da / count_;
  mean_b_ += db / count_;
  m2_a_ += da * (a - mean_a_);
  m2_b_ += db * (b - mean_b_);
  c_ab_ += da * (b - mean_b_);
}

void PairedStats::Merge(const PairedStats& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double total = static_cast<double>(count_ + other.count_);
  const double da = other.mean_a_ - mean_a_;
  const double db = other.mean_b_ - mean_b_;
  const double w = static_cast<double>(count_) * other.count_ / total;
  m2_a_ += other.m2_a_ + da * da * w;
  m2_b_ += other.m2_b_ + db * db * w;
  c_ab_ += other.c_ab_ + da * db * w;
  mean_a_ += da * other.count_ / total;
  mean_b_ += db * other.count_ / total;
  count_ += other.count_;
}

double PairedStats::var_a() const { return m2_a_ / (count_ - 1); }
double PairedStats::var_b() const { return m2_b_ / (count_ - 1); }
double PairedStats::cov() const { return c_ab_ / (count_ - 1); }

namespace {

std::optional<double> RatioStderr(const PairedStats& s) {
  if (s.count() < 2 || s.mean_b() == 0) return std::nullopt;
  const double r = s.mean_a() / s.mean_b();
  const double var =
      (s.var_a() - 2 * r * s.cov() + r * r * s.var_b()) /
      (static_cast<double>(s.count()) * s.mean_b() * s.mean_b());
  return std::sqrt(std::max(var, 0.0));
}

}  // namespace

SimulationReport RunBatch(const PolicyFactory& factory, const Distribution& d,
                          int64_t n, int64_t reps, uint64_t seed,
                          const EngineOptions& options) {
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  SimulationReport report;
  report.distribution = d.Name();
  report.n = n;
  report.replications = reps;
  report.seed = seed;
  PairedStats stats;
  double hires = 0;
  for (int64_t r = 0; r < reps; ++r) {
    std::unique_ptr<Policy> policy = factory();
    if (r == 0) report.policy = policy->Name();
    RngStream rng(seed, static_cast<uint64_t>(r));
    const EpisodeResult episode = RunEpisode(*policy, d, n, rng, options);
    stats.Add(episode.alg_cost, episode.opt_cost);
    hires += static_cast<double>(episode.hires);
    report.max_concurrency =
        std::max(report.max_concurrency, episode.max_concurrency);
  }
  report.mean_cost = stats.mean_a();
  report.mean_opt = stats.mean_b();
  report.ratio_of_means = stats.mean_a() / stats.mean_b();
  report.mean_hires = hires / static_cast<double>(reps);
  if (reps >= 2) {
    report.stderr_cost = std::sqrt(stats.var_a() / reps);
    report.stderr_opt = std::sqrt(stats.var_b() / reps);
    report.stderr_ratio = RatioStderr(stats);
  }
  return report;
}

PairedComparison ComparePolicies(const PolicyFactory& a,
                                 const PolicyFactory& b, const Distribution& d,
                                 int64_t n, int64_t reps, uint64_t seed,
                                 const EngineOptions& options) {
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  PairedStats stats;
  PairedStats difference;
  for (int64_t r = 0; r < reps; ++r) {
    std::unique_ptr<Policy> pa = a();
    std::unique_ptr<Policy> pb = b();
    RngStream rng_a(seed, static_cast<uint64_t>(r));
    RngStream rng_b(seed, static_cast<uint64_t>(r));
    const double cost_a = RunEpisode(*pa, d, n, rng_a, options).alg_cost;
    const double cost_b = RunEpisode(*pb, d, n, rng_b, options).alg_cost;
    stats.Add(cost_a, cost_b);
    difference.Add(cost_a - cost_b, 0);
  }
  PairedComparison out;
  out.mean_a = stats.mean_a();
  out.mean_b = stats.mean_b();
  out.ratio = stats.mean_a() / stats.mean_b();
  out.stderr_ratio = RatioStderr(stats);
  if (reps >= 2) out.stderr_difference = std::sqrt(difference.var_a() / reps);
  return out;
}

}  // namespace hiring

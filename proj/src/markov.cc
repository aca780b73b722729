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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hiring {

std::vector<double> MhatVisits(double p, int64_t k) {
  const std::vector<long double> v = MhatVisitProfile<long double>(p, k);
  return {v.begin(), v.end()};
}

long double NhatAbTransitions(double p, int64_t k) {
  return NhatAbProfile<long double>(p, k).h;
}

BjBound NhatBjTransitions(double p) {
  if (!(p > 1.0 / 3 && p <= 1)) {
    throw std::domain_error("N_hat needs 1/3 < p <= 1");
  }
  return {p / (3 * p - 1), 2 * p / (3 * p - 1)};
}

namespace {

struct Accumulator {
  double sum = 0;
  double sum_sq = 0;
  void Add(double x) {
    sum += x;
    sum_sq += x * x;
  }
  double Mean(int64_t n) const { return sum / n; }
  double Stderr(int64_t n) const {
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
    return std::sqrt(var / n);
  }
};

}  // namespace

ChainStats SimulateChain(const ChainSpec& spec, int64_t reps, RngStream& rng,
                         int64_t step_limit) {
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  const int64_t k = spec.k;
  if (k < 1) throw std::domain_error("chain needs k >= 1");
  const bool two_rows = spec.family == ChainFamily::kNHat;
  if (spec.family == ChainFamily::kMHat && !(spec.p > 0.5 && spec.p <= 1)) {
    throw std::domain_error("M_hat needs 1/2 < p <= 1");
  }
  if (two_rows && !(spec.p > 1.0 / 3 && spec.p <= 1)) {
    throw std::domain_error("N_hat needs 1/3 < p <= 1");
  }
  std::vector<double> up(k + 1, spec.p);
  if (spec.family == ChainFamily::kMUniform) {
    for (int64_t j = 1; j <= k; ++j) {
      const double miss = std::pow(1 - std::ldexp(1.0, -static_cast<int>(j)),
                                   std::ldexp(1.0, static_cast<int>(j)));
      up[j] = 1 - miss;
    }
  }

  const size_t states = two_rows ? 2 * (k + 1) : k + 1;
  std::vector<Accumulator> visits(states);
  std::vector<Accumulator> ba(two_rows ? k : 0);
  Accumulator ab;
  Accumulator transitions;
  std::vector<int64_t> count(states);
  std::vector<int64_t> ba_count(ba.size());
  ChainStats out;
  out.replications = reps;
  out.absorbing_visits_min = std::numeric_limits<int64_t>::max();
  out.absorbing_visits_max = 0;
  const size_t absorbing = two_rows ? states - 1 : k;

  for (int64_t r = 0; r < reps; ++r) {
    std::fill(count.begin(), count.end(), 0);
    std::fill(ba_count.begin(), ba_count.end(), 0);
    int64_t ab_count = 0;
    int64_t steps = 0;
    // For the two-row chain, states 0..k are A_j and k+1..2k+1 are B_j.
    size_t state = 0;
    ++count[state];
    while (state != absorbing) {
      if (++steps > step_limit) {
        throw StepLimitError("chain not absorbed within " +
                             std::to_string(step_limit) + " steps");
      }
      const double u = rng.NextUniform();
      if (!two_rows) {
        state = (state == 0 || u < up[state]) ? state + 1 : state - 1;
      } else if (state <= static_cast<size_t>(k)) {
        if (state == 0 || u < spec.p) {
          state += k + 1;
          ++ab_count;
        } else {
          state -= 1;
        }
      } else {
        const size_t j = state - (k + 1);
        if (u < 0.5) {
          state += 1;
        } else {
          ++ba_count[j];
          state = j + 1;
        }
      }
      ++count[state];
    }
    for (size_t s = 0; s < states; ++s) visits[s].Add(count[s]);
    for (size_t j = 0; j < ba.size(); ++j) ba[j].Add(ba_count[j]);
    ab.Add(ab_count);
    transitions.Add(steps);
    out.absorbing_visits_min =
        std::min(out.absorbing_visits_min, count[absorbing]);
    out.absorbing_visits_max =
        std::max(out.absorbing_visits_max, count[absorbing]);
  }

  for (const Accumulator& a : visits) {
    out.visits_mean.push_back(a.Mean(reps));
    out.visits_stderr.push_back(a.Stderr(reps));
  }
  for (const Accumulator& a : ba) {
    out.ba_mean.push_back(a.Mean(reps));
    out.ba_stderr.push_back(a.Stderr(reps));
  }
  out.ab_mean = ab.Mean(reps);
  out.ab_stderr = ab.Stderr(reps);
  out.transitions_mean = transitions.Mean(reps);
  out.transitions_stderr = transitions.Stderr(reps);
  return out;
}

}  // namespace hiring

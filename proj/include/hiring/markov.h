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

#ifndef HIRING_MARKOV_H_
#define HIRING_MARKOV_H_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hiring/rng.h"

namespace hiring {

namespace internal {

template <typename T>
T IntPow(T base, int64_t e) {
  T out = 1;
  for (; e > 0; e >>= 1) {
    if (e & 1) out *= base;
    base *= base;
  }
  return out;
}

}  // namespace internal

// Expected visit counts v_0..v_k of the birth-death chain on 0..k that moves
// 0 -> 1 surely, j -> j+1 with probability p and j -> j-1 otherwise, and is
// absorbed at k. Needs 1/2 < p <= 1 and k >= 1.
template <typename T>
std::vector<T> MhatVisitProfile(T p, int64_t k) {
  if (!(p > T(1) / 2 && p <= 1)) {
    throw std::domain_error("M_hat needs 1/2 < p <= 1");
  }
  if (k < 1) throw std::domain_error("chain needs k >= 1");
  std::vector<T> v(k + 1, T(1));
  if (k == 1) return v;
  const T odds = 1 / p - 1;
  for (int64_t j = 1; j < k; ++j) {
    v[j] = (odds - internal::IntPow(odds, k - j)) / (2 * p - 1) + 1 / p;
  }
  v[0] = 1 + (1 - p) * v[1];
  return v;
}

std::vector<double> MhatVisits(double p, int64_t k);

// Expected visits for the two-row chain: A_0 -> B_0 surely; A_j -> B_j with
// probability p, else A_{j-1}; B_j -> B_{j+1} or A_{j+1} with probability 1/2
// each; B_k absorbing. a[j], b[j] count A->B transitions still to come from
// A_j and B_j, and h = a[0].
template <typename T>
struct NhatProfile {
  std::vector<T> a;
  std::vector<T> b;
  T h;
};

template <typename T>
NhatProfile<T> NhatAbProfile(T p, int64_t k) {
  if (!(p > T(1) / 3 && p <= 1)) {
    throw std::domain_error("N_hat needs 1/3 < p <= 1");
  }
  if (k < 1) throw std::domain_error("chain needs k >= 1");
  const T d = 3 * p - 1;
  const T beta = 2 * (1 - p) / (1 + p);
  const T q2 = (1 - p) * (1 - p) / (d * d);
  const T tail = internal::IntPow(beta, k) * q2;
  NhatProfile<T> out;
  out.a.resize(k + 1);
  out.b.resize(k + 1);
  T beta_j = 1;
  for (int64_t j = 0; j <= k; ++j) {
    out.a[j] = T(k - j + 2) * p / d - beta_j * 2 * p * (1 - p) / (d * d) + tail;
    out.b[j] = T(k - j) * p / d - beta_j * q2 + tail;
    beta_j *= beta;
  }
  out.h = T(k) * p / d - 4 * p * (1 - 2 * p) / (d * d) + tail;
  return out;
}

// h in long double precision.
long double NhatAbTransitions(double p, int64_t k);

struct BjBound {
  double transitions;  // B_j -> A_{j+1}: p / (3p - 1)
  double visits;       // visits to B_j: 2p / (3p - 1)
};
BjBound NhatBjTransitions(double p);

class StepLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ChainFamily {
  kMHat,
  kNHat,
  // Birth-death chain with level-dependent failure (1 - 2^-j)^{2^j}.
  kMUniform,
};

struct ChainSpec {
  ChainFamily family = ChainFamily::kMHat;
  double p = 0.75;
  int64_t k = 1;
};

struct ChainStats {
  int64_t replications = 0;
  // M families: states 0..k. N_hat: A_0..A_k followed by B_0..B_k.
  std::vector<double> visits_mean;
  std::vector<double> visits_stderr;
  // N_hat only.
  double ab_mean = 0;
  double ab_stderr = 0;
  std::vector<double> ba_mean;  // B_j -> A_{j+1}, j = 0..k-1
  std::vector<double> ba_stderr;
  double transitions_mean = 0;
  double transitions_stderr = 0;
  int64_t absorbing_visits_min = 0;
  int64_t absorbing_visits_max = 0;
};

ChainStats SimulateChain(const ChainSpec& spec, int64_t reps, RngStream& rng,
                         int64_t step_limit = 1000000000);

}  // namespace hiring

#endif  // HIRING_MARKOV_H_

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

#ifndef HIRING_ANALYSIS_H_
#define HIRING_ANALYSIS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hiring/distribution.h"

namespace hiring {

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kE = 2.71828182845904523536;
inline constexpr double kLn2 = 0.69314718055994530942;
// 5/2 - 55 / (6 e^2).
double Eta();
// 1 + 20/29 (5/6 - gamma).
double LogHarmonicConstant();

struct BoundReport {
  std::string name;
  std::optional<int64_t> n;
  double value = 0;
  double bound = 0;
  bool satisfied = false;
};

// H_n. Exact rational summation up to 10^4, compensated summation above.
double Harmonic(int64_t n);
// H_0..H_n by compensated running sums, for sweeps.
std::vector<long double> HarmonicSeries(int64_t n);

// E[Opt_n] for uniform costs: H_{n+1} - 1.
double OptUniform(int64_t n);
// E[Opt_n] = sum_{i=1}^n int (1 - F)^i.
double OptGeneral(const Distribution& d, int64_t n);

// Quantile-band lower bound on E[Opt_n]; needs n >= 5.
double OptLowerBoundQuantileBands(const Distribution& d, int64_t n);
// E[x] + sum_{i=1}^{floor(log2 n)} 2^{i-1} int (1 - F)^{2^i}.
double OptLowerBoundSurvivalPowers(const Distribution& d, int64_t n);

// h(t) = 2 / (t + ln(t + 1) + 1.767).
double GilbertMostellerH(int64_t t);
// sum_{t=1}^n h(t) / (H_{n+1} - 1).
double GilbertMostellerLowerCurve(int64_t n);
// tau_0 = 0, tau_{t+1} = (1 + tau_t^2) / 2.
double GilbertMostellerThreshold(int64_t t);

// Expected cost E_k of the optimal sequential policy with k steps left, and
// its thresholds tau_k = E_k / k. Both indexed 1..n; entry 0 is unused.
struct SequentialTable {
  std::vector<double> e;
  std::vector<double> tau;
};
SequentialTable SequentialExpectedCost(const Distribution& d, int64_t n);

// The five constant chains behind the competitive ratios.
std::vector<BoundReport> VerifyRatioConstants();
// Individual checks behind VerifyRatioConstants, exposed for tests.
BoundReport CheckAlg1Constant();
BoundReport CheckLogHarmonicSweep(int64_t n_max);
BoundReport CheckAlg2Sweep(int64_t n_max);
BoundReport CheckAlg3Constant();
BoundReport CheckAlg4Constant(int64_t lambda);

// G(tau) = P[x >= tau] (tau - E[x | x >= tau]).
double GFunction(const Distribution& d, double tau);
// Largest downward step of G along the grid; satisfied when <= 1e-9.
BoundReport GMonotoneCheck(const Distribution& d,
                           const std::vector<double>& grid);

// alpha(r, n) by direct summation of the band probabilities.
double Alpha(int64_t r, int64_t n);
// alpha(r, n) >= 2^{r-1} for r < k, >= eta 2^{k-1} for r = k, where
// k = ceil(log2 n) - 2.
BoundReport AlphaBandCheck(int64_t r, int64_t n);

// ceil(log2 n) for n >= 1.
int CeilLog2(int64_t n);

}  // namespace hiring

#endif  // HIRING_ANALYSIS_H_

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

#include "hiring/analysis.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hiring/markov.h"
#include "hiring/rational.h"

namespace hiring {
namespace {

constexpr int64_t kExactHarmonicLimit = 10000;

// Neumaier summation in long double.
class CompensatedSum {
 public:
  void Add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0;
  long double comp_ = 0;
};

// Partial moment E[x 1{x <= tau}] and E[x 1{x > tau}], zero on empty sides.
double MomentBelow(const Distribution& d, double tau) {
  const double mass = d.Cdf(tau);
  if (!(mass > 0)) return 0;
  try {
    return mass * d.ConditionalExpectation(-INFINITY, tau);
  } catch (const ZeroMassError&) {
    return 0;
  }
}

}  // namespace

double Eta() { return 2.5 - 55 / (6 * kE * kE); }

double LogHarmonicConstant() { return 1 + 20.0 / 29 * (5.0 / 6 - kEulerGamma); }

int CeilLog2(int64_t n) {
  if (n < 1) throw std::domain_error("log of n < 1");
  return n == 1 ? 0 : std::bit_width(static_cast<uint64_t>(n - 1));
}

double Harmonic(int64_t n) {
  if (n <= kExactHarmonicLimit) return ToDouble(HarmonicRational(n));
  return static_cast<double>(HarmonicSeries(n)[n]);
}

std::vector<long double> HarmonicSeries(int64_t n) {
  std::vector<long double> out(n + 1, 0);
  CompensatedSum sum;
  for (int64_t i = 1; i <= n; ++i) {
    sum.Add(1.0L / i);
    out[i] = sum.value();
  }
  return out;
}

double OptUniform(int64_t n) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  if (n + 1 <= kExactHarmonicLimit) {
    return ToDouble(HarmonicRational(n + 1) - 1);
  }
  return static_cast<double>(HarmonicSeries(n + 1)[n + 1] - 1);
}

double OptGeneral(const Distribution& d, int64_t n) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  CompensatedSum sum;
  for (int64_t i = 1; i <= n; ++i) sum.Add(d.SurvivalPowerIntegral(i));
  return static_cast<double>(sum.value());
}

double OptLowerBoundQuantileBands(const Distribution& d, int64_t n) {
  if (n < 5) throw std::domain_error("quantile-band bound needs n >= 5");
  const int k = CeilLog2(n) - 2;
  double total = 0;
  for (int r = 0; r < k; ++r) {
    total += std::ldexp(1.0, r - 1) *
             d.ConditionalExpectation(d.Quantile(std::ldexp(1.0, -(r + 1))),
                                      d.Quantile(std::ldexp(1.0, -r)));
  }
  total += Eta() * std::ldexp(1.0, k - 1) *
           d.ConditionalExpectation(-INFINITY, d.Quantile(std::ldexp(1.0, -k)));
  return total;
}

double OptLowerBoundSurvivalPowers(const Distribution& d, int64_t n) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  const int top = std::bit_width(static_cast<uint64_t>(n)) - 1;
  double total = d.Mean();
  for (int i = 1; i <= top; ++i) {
    total += std::ldexp(1.0, i - 1) * d.SurvivalPowerIntegral(int64_t{1} << i);
  }
  return total;
}

double GilbertMostellerH(int64_t t) {
  const double td = static_cast<double>(t);
  return 2 / (td + std::log(td + 1) + 1.767);
}

double GilbertMostellerLowerCurve(int64_t n) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  CompensatedSum sum;
  for (int64_t t = 1; t <= n; ++t) sum.Add(GilbertMostellerH(t));
  return static_cast<double>(sum.value()) / OptUniform(n);
}

double GilbertMostellerThreshold(int64_t t) {
  if (t < 0) throw std::domain_error("t must be >= 0");
  long double tau = 0;
  for (int64_t i = 0; i < t; ++i) tau = (1 + tau * tau) / 2;
  return static_cast<double>(tau);
}

SequentialTable SequentialExpectedCost(const Distribution& d, int64_t n) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  SequentialTable table;
  table.e.assign(n + 1, 0);
  table.tau.assign(n + 1, 0);
  table.e[1] = d.Mean();
  table.tau[1] = table.e[1];
  const bool uniform = d.kind() == DistributionKind::kUniform01;
  for (int64_t k = 2; k <= n; ++k) {
    const double prev = table.e[k - 1];
    if (uniform) {
      table.e[k] = prev + 0.5 - prev * prev / (2.0 * (k - 1));
    } else {
      // Hire for all k steps below tau_{k-1}; otherwise hire once and
      // continue optimally with k-1 steps.
      const double tau = prev / (k - 1);
      const double above_mass = 1 - d.Cdf(tau);
      double above = 0;
      if (above_mass > 0) {
        try {
          above = above_mass * (d.ConditionalExpectation(tau, INFINITY) + prev);
        } catch (const ZeroMassError&) {
          above = 0;
        }
      }
      table.e[k] = k * MomentBelow(d, tau) + above;
    }
    table.tau[k] = table.e[k] / k;
  }
  return table;
}

BoundReport CheckAlg1Constant() {
  const double value =
      LogHarmonicConstant() / kLn2 * (kE / (kE - 2) + 1);
  return {"alg1_constant", std::nullopt, value, 8.122, value < 8.122};
}

BoundReport CheckLogHarmonicSweep(int64_t n_max) {
  const std::vector<long double> h = HarmonicSeries(n_max + 1);
  double worst = 0;
  int64_t arg = 1;
  for (int64_t n = 1; n <= n_max; ++n) {
    const double value =
        static_cast<double>(std::log(static_cast<long double>(n)) / (h[n + 1] - 1));
    if (value > worst) {
      worst = value;
      arg = n;
    }
  }
  const double bound = LogHarmonicConstant();
  return {"log_harmonic_sweep", arg, worst, bound, worst <= bound};
}

BoundReport CheckAlg2Sweep(int64_t n_max) {
  const double p = 1 - std::exp(-0.75);
  const double c = 0.75;
  const std::vector<long double> h = HarmonicSeries(n_max + 1);
  std::map<int, long double> h_by_k;
  double worst = 0;
  int64_t arg = 0;
  int m = 0;  // smallest m with 2^m >= n / c, i.e. 3 * 2^m >= 4n
  for (int64_t n = 1; n <= n_max; ++n) {
    while (3 * (int64_t{1} << m) < 4 * n) ++m;
    const int k = m - 2;
    if (k < 1) continue;
    auto it = h_by_k.find(k);
    if (it == h_by_k.end()) it = h_by_k.emplace(k, NhatAbTransitions(p, k)).first;
    const double value =
        static_cast<double>((3 * it->second * c - c) / (h[n + 1] - 1));
    if (value > worst) {
      worst = value;
      arg = n;
    }
  }
  return {"alg2_sweep", arg, worst, 2.965, worst <= 2.965};
}

BoundReport CheckAlg3Constant() {
  const double eta = Eta();
  const double e = kE;
  const double value =
      (8 * e - 8) / (2 * e - 3) +
      (1 - eta * (e - 1) / (2 * e - 3)) /
          (0.5 * (1 - 3 / std::pow(e, 4)) + std::pow(0.2, 5) - 0.2);
  return {"alg3_constant", std::nullopt, value, 6.052, value <= 6.052};
}

BoundReport CheckAlg4Constant(int64_t lambda) {
  const double l = static_cast<double>(lambda);
  const double value = std::max(4 * (l + 1) * (l + 1) / (l - 1),
                                8 * l * (l + 1) / (l - 1));
  return {"alg4_constant", std::nullopt, value, 48, value <= 48 + 1e-12};
}

std::vector<BoundReport> VerifyRatioConstants() {
  return {CheckAlg1Constant(), CheckLogHarmonicSweep(1000000),
          CheckAlg2Sweep(1000000), CheckAlg3Constant(), CheckAlg4Constant(3)};
}

double GFunction(const Distribution& d, double tau) {
  const double mass = 1 - d.Cdf(tau);
  if (!(mass > 0)) return 0;
  return mass * (tau - d.ConditionalExpectation(tau, INFINITY));
}

BoundReport GMonotoneCheck(const Distribution& d,
                           const std::vector<double>& grid) {
  double worst = 0;
  for (size_t k = 1; k < grid.size(); ++k) {
    worst = std::max(worst, GFunction(d, grid[k - 1]) - GFunction(d, grid[k]));
  }
  return {"g_monotone(" + d.Name() + ")", std::nullopt, worst, 1e-9,
          worst <= 1e-9};
}

double Alpha(int64_t r, int64_t n) {
  const int k = CeilLog2(n) - 2;
  if (r < 1 || r > k) throw std::domain_error("alpha needs 1 <= r <= k");
  const double in_band = std::ldexp(1.0, -static_cast<int>(r));
  const double above = 1 - in_band;                    // 1 - 2^-r
  const double above_prev = 1 - 2 * in_band;           // 1 - 2^-(r-1)
  const double first = r < k ? in_band / 2 : in_band;  // band width factor
  CompensatedSum sum;
  for (int64_t i = 1; i <= n; ++i) {
    const double id = static_cast<double>(i);
    sum.Add(id * first * std::pow(above, id - 1));
    sum.Add(std::pow(above, id) - std::pow(above_prev, id) -
            id * in_band * std::pow(above_prev, id - 1));
  }
  return static_cast<double>(sum.value());
}

BoundReport AlphaBandCheck(int64_t r, int64_t n) {
  const int k = CeilLog2(n) - 2;
  const double value = Alpha(r, n);
  const double target = r < k ? std::ldexp(1.0, static_cast<int>(r) - 1)
                              : Eta() * std::ldexp(1.0, k - 1);
  return {"alpha_band(r=" + std::to_string(r) + ")", n, value, target,
          value >= target - 1e-12};
}

}  // namespace hiring

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

#ifndef HIRING_DISTRIBUTION_H_
#define HIRING_DISTRIBUTION_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hiring/rng.h"

namespace hiring {

// Raised when a conditional expectation is requested on an interval that
// carries no probability mass.
class ZeroMassError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a numerically integrated survival power fails to converge.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DistributionKind { kUniform01, kExponential, kPareto, kEmpirical };

// A continuous cost law on the nonnegative reals. Immutable once built.
//
// The empirical kind takes sorted, distinct knots v_0 < ... < v_m and uses
// the piecewise-linear CDF with F(v_k) = k / m, so every knot interval
// carries mass 1/m and there are no atoms.
class Distribution {
 public:
  static Distribution Uniform01();
  static Distribution Exponential(double rate);
  static Distribution Pareto(double shape, double scale);
  static Distribution Empirical(std::vector<double> knots);

  DistributionKind kind() const { return kind_; }
  double rate() const { return a_; }
  double shape() const { return a_; }
  double scale() const { return b_; }
  const std::vector<double>& knots() const { return knots_; }
  double inversion_tolerance() const { return inversion_tolerance_; }

  // Short label without commas, safe for CSV cells.
  std::string Name() const;

  double Sample(RngStream& rng) const;
  double Cdf(double x) const;
  // 1 - Cdf(x), accurate deep in the upper tail.
  double Survival(double x) const;
  // Smallest x with F(x) >= q for q in (0, 1]. Returns +inf at q = 1 when the
  // support is unbounded. Throws std::domain_error outside (0, 1].
  double Quantile(double q) const;
  // E[x | lo < x <= hi]; hi may be +inf.
  double ConditionalExpectation(double lo, double hi) const;
  // Integral over [0, inf) of (1 - F(x))^m.
  double SurvivalPowerIntegral(int64_t m) const;
  double Mean() const;

  double SupportMin() const;
  double SupportMax() const;

  // Generic numerical routes. These only use Cdf and Survival and are kept
  // independent of the closed forms above so the two can be cross-checked.
  double QuantileByBisection(double q) const;
  double ConditionalExpectationByQuadrature(double lo, double hi) const;
  double SurvivalPowerIntegralByQuadrature(int64_t m) const;

 private:
  Distribution(DistributionKind kind, double a, double b,
               std::vector<double> knots);

  // Points where Cdf has a kink, used to split quadrature ranges.
  std::vector<double> Breakpoints() const;
  double IntegrateSurvival(double lo, double hi, double shift,
                           int64_t power) const;

  DistributionKind kind_;
  double a_;
  double b_;
  std::vector<double> knots_;
  double inversion_tolerance_ = 1e-12;
};

}  // namespace hiring

#endif  // HIRING_DISTRIBUTION_H_

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

#include "hiring/distribution.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hiring {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadratureTolerance = 1e-9;

std::string FormatReal(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

}  // namespace

Distribution::Distribution(DistributionKind kind, double a, double b,
                           std::vector<double> knots)
    : kind_(kind), a_(a), b_(b), knots_(std::move(knots)) {}

Distribution Distribution::Uniform01() {
  return Distribution(DistributionKind::kUniform01, 0, 0, {});
}

Distribution Distribution::Exponential(double rate) {
  if (!(rate > 0) || !std::isfinite(rate)) {
    throw std::invalid_argument("exponential rate must be positive and finite");
  }
  return Distribution(DistributionKind::kExponential, rate, 0, {});
}

Distribution Distribution::Pareto(double shape, double scale) {
  if (!(shape > 1) || !std::isfinite(shape)) {
    throw std::invalid_argument("pareto shape must be finite and > 1");
  }
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw std::invalid_argument("pareto scale must be positive and finite");
  }
  return Distribution(DistributionKind::kPareto, shape, scale, {});
}

Distribution Distribution::Empirical(std::vector<double> knots) {
  if (knots.size() < 2) {
    throw std::invalid_argument("empirical law needs at least two values");
  }
  std::sort(knots.begin(), knots.end());
  for (size_t k = 0; k < knots.size(); ++k) {
    if (!std::isfinite(knots[k]) || knots[k] < 0) {
      throw std::invalid_argument(
          "empirical values must be finite and nonnegative");
    }
    if (k > 0 && knots[k] == knots[k - 1]) {
      throw std::invalid_argument("empirical values must be distinct");
    }
  }
  return Distribution(DistributionKind::kEmpirical, 0, 0, std::move(knots));
}

std::string Distribution::Name() const {
  switch (kind_) {
    case DistributionKind::kUniform01:
      return "uniform01";
    case DistributionKind::kExponential:
      return "exponential(rate=" + FormatReal(a_) + ")";
    case DistributionKind::kPareto:
      return "pareto(shape=" + FormatReal(a_) + " scale=" + FormatReal(b_) +
             ")";
    case DistributionKind::kEmpirical:
      return "empirical(knots=" + std::to_string(knots_.size()) + ")";
  }
  return "unknown";
}

double Distribution::Sample(RngStream& rng) const {
  const double u = rng.NextUniform();
  switch (kind_) {
    case DistributionKind::kUniform01:
      return u;
    case DistributionKind::kExponential:
      return -std::log1p(-u) / a_;
    case DistributionKind::kPareto:
      return b_ * std::pow(1 - u, -1 / a_);
    case DistributionKind::kEmpirical: {
      const double m = static_cast<double>(knots_.size() - 1);
      const double pos = u * m;
      const size_t k = std::min(static_cast<size_t>(pos), knots_.size() - 2);
      return knots_[k] + (pos - k) * (knots_[k + 1] - knots_[k]);
    }
  }
  return 0;
}

double Distribution::Cdf(double x) const {
  if (!(x > 0)) return 0;
  switch (kind_) {
    case DistributionKind::kUniform01:
      return std::min(x, 1.0);
    case DistributionKind::kExponential:
      return -std::expm1(-a_ * x);
    case DistributionKind::kPareto:
      return x <= b_ ? 0 : 1 - std::pow(b_ / x, a_);
    case DistributionKind::kEmpirical: {
      if (x <= knots_.front()) return 0;
      if (x >= knots_.back()) return 1;
      const size_t k =
          std::upper_bound(knots_.begin(), knots_.end(), x) - knots_.begin() -
          1;
      const double m = static_cast<double>(knots_.size() - 1);
      return (k + (x - knots_[k]) / (knots_[k + 1] - knots_[k])) / m;
    }
  }
  return 0;
}

double Distribution::Survival(double x) const {
  switch (kind_) {
    case DistributionKind::kExponential:
      return x > 0 ? std::exp(-a_ * x) : 1;
    case DistributionKind::kPareto:
      return x <= b_ ? 1 : std::pow(b_ / x, a_);
    default:
      return 1 - Cdf(x);
  }
}

double Distribution::Quantile(double q) const {
  if (!(q > 0 && q <= 1)) {
    throw std::domain_error("quantile level must lie in (0, 1]");
  }
  switch (kind_) {
    case DistributionKind::kUniform01:
      return q;
    case DistributionKind::kExponential:
      return q == 1 ? kInf : -std::log1p(-q) / a_;
    case DistributionKind::kPareto:
      return q == 1 ? kInf : b_ * std::pow(1 - q, -1 / a_);
    case DistributionKind::kEmpirical: {
      const double m = static_cast<double>(knots_.size() - 1);
      const double pos = q * m;
      const size_t k = std::min(static_cast<size_t>(pos), knots_.size() - 2);
      return knots_[k] + (pos - k) * (knots_[k + 1] - knots_[k]);
    }
  }
  return 0;
}

double Distribution::ConditionalExpectation(double lo, double hi) const {
  if (!(lo < hi)) throw std::domain_error("interval needs lo < hi");
  lo = std::max(lo, 0.0);
  const double zero_mass_tol = 1e-300;
  switch (kind_) {
    case DistributionKind::kUniform01: {
      const double a = std::min(lo, 1.0);
      const double b = std::min(hi, 1.0);
      if (!(b - a > zero_mass_tol)) throw ZeroMassError("zero-mass interval");
      return (a + b) / 2;
    }
    case DistributionKind::kExponential: {
      // Factor out e^{-r lo} so far tails keep full precision.
      const double r = a_;
      const double width = hi - lo;
      if (!(width > 0) || std::exp(-r * lo) <= zero_mass_tol) {
        throw ZeroMassError("zero-mass interval");
      }
      if (std::isinf(width)) return lo + 1 / r;
      const double kept = std::exp(-r * width);
      return lo + 1 / r - width * kept / -std::expm1(-r * width);
    }
    case DistributionKind::kPareto: {
      const double alpha = a_;
      const double a = std::max(lo, b_);
      if (!(hi > a)) throw ZeroMassError("zero-mass interval");
      const double t = std::isinf(hi) ? 0.0 : a / hi;
      const double mass = 1 - std::pow(t, alpha);
      if (!(std::pow(b_ / a, alpha) * mass > zero_mass_tol)) {
        throw ZeroMassError("zero-mass interval");
      }
      return alpha / (alpha - 1) * a * (1 - std::pow(t, alpha - 1)) / mass;
    }
    case DistributionKind::kEmpirical: {
      double mass = 0;
      double moment = 0;
      for (size_t k = 0; k + 1 < knots_.size(); ++k) {
        const double a = std::max(lo, knots_[k]);
        const double b = std::min(hi, knots_[k + 1]);
        if (b <= a) continue;
        const double density = 1 / (knots_[k + 1] - knots_[k]);
        mass += (b - a) * density;
        moment += (b - a) * (a + b) / 2 * density;
      }
      if (!(mass > zero_mass_tol)) throw ZeroMassError("zero-mass interval");
      return moment / mass;
    }
  }
  return 0;
}

double Distribution::SurvivalPowerIntegral(int64_t m) const {
  if (m < 1) throw std::domain_error("survival power must be >= 1");
  const double md = static_cast<double>(m);
  switch (kind_) {
    case DistributionKind::kUniform01:
      return 1 / (md + 1);
    case DistributionKind::kExponential:
      return 1 / (md * a_);
    case DistributionKind::kPareto:
      return b_ + b_ / (a_ * md - 1);
    case DistributionKind::kEmpirical: {
      // On knot interval k the survival falls linearly from 1 - k/K to
      // 1 - (k+1)/K.
      const double segments = static_cast<double>(knots_.size() - 1);
      double total = knots_.front();
      for (size_t k = 0; k + 1 < knots_.size(); ++k) {
        const double hi = 1 - k / segments;
        const double lo = 1 - (k + 1) / segments;
        total += (knots_[k + 1] - knots_[k]) * segments *
                 (std::pow(hi, md + 1) - std::pow(lo, md + 1)) / (md + 1);
      }
      return total;
    }
  }
  return 0;
}

double Distribution::Mean() const { return SurvivalPowerIntegral(1); }

double Distribution::SupportMin() const {
  switch (kind_) {
    case DistributionKind::kPareto:
      return b_;
    case DistributionKind::kEmpirical:
      return knots_.front();
    default:
      return 0;
  }
}

double Distribution::SupportMax() const {
  switch (kind_) {
    case DistributionKind::kUniform01:
      return 1;
    case DistributionKind::kEmpirical:
      return knots_.back();
    default:
      return kInf;
  }
}

double Distribution::QuantileByBisection(double q) const {
  if (!(q > 0 && q <= 1)) {
    throw std::domain_error("quantile level must lie in (0, 1]");
  }
  if (q == 1 && std::isinf(SupportMax())) return kInf;
  double lo = SupportMin();
  double hi = std::max(1.0, 2 * lo);
  while (Cdf(hi) < q) {
    if (std::isinf(hi)) return kInf;
    hi *= 2;
  }
  // Invariant: Cdf(lo) < q <= Cdf(hi), or lo is the support minimum.
  while (hi - lo > inversion_tolerance_ * std::max(1.0, hi)) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (Cdf(mid) >= q) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::vector<double> Distribution::Breakpoints() const {
  switch (kind_) {
    case DistributionKind::kUniform01:
      return {0, 1};
    case DistributionKind::kPareto:
      return {0, b_};
    case DistributionKind::kEmpirical: {
      std::vector<double> points = knots_;
      if (points.front() > 0) points.insert(points.begin(), 0);
      return points;
    }
    default:
      return {0};
  }
}

double Distribution::IntegrateSurvival(double lo, double hi, double shift,
                                       int64_t power) const {
  auto integrand = [&](double x) {
    return std::pow(std::max(0.0, Survival(x) - shift),
                    static_cast<double>(power));
  };
  // Finite part: split at kinks, then geometrically, so each Gauss-Kronrod
  // panel sees a smooth integrand of moderate dynamic range.
  std::vector<double> kinks = Breakpoints();
  double finite_hi = hi;
  if (std::isinf(hi)) {
    finite_hi = std::max(lo, 64 * std::max(1.0, kinks.back()));
  }
  std::vector<double> cuts = {lo};
  for (double p : kinks) {
    if (p > lo && p < finite_hi) cuts.push_back(p);
  }
  cuts.push_back(finite_hi);
  std::vector<double> panels = {cuts.front()};
  for (size_t k = 1; k < cuts.size(); ++k) {
    const double a = cuts[k - 1];
    const double b = cuts[k];
    for (double c = a * 4; a > 0 && c < b; c *= 4) panels.push_back(c);
    panels.push_back(b);
  }
  double total = 0;
  double error_total = 0;
  double l1_total = 0;
  for (size_t k = 1; k < panels.size(); ++k) {
    if (!(panels[k] > panels[k - 1])) continue;
    double error = 0;
    double l1 = 0;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, panels[k - 1], panels[k], 20, 1e-12, &error, &l1);
    error_total += error;
    l1_total += l1;
  }
  if (std::isinf(hi)) {
    // Half-infinite tail; exp_sinh handles algebraic decay.
    boost::math::quadrature::exp_sinh<double> tail_rule;
    double error = 0;
    double l1 = 0;
    total += tail_rule.integrate(integrand, finite_hi, kInf, 1e-12, &error,
                                 &l1);
    error_total += error;
    l1_total += l1;
  }
  if (!std::isfinite(total) ||
      error_total > kQuadratureTolerance * std::max(l1_total, 1e-300)) {
    throw DivergenceError("survival quadrature did not converge");
  }
  return total;
}

double Distribution::ConditionalExpectationByQuadrature(double lo,
                                                        double hi) const {
  if (!(lo < hi)) throw std::domain_error("interval needs lo < hi");
  lo = std::max(lo, 0.0);
  const double s_lo = Survival(lo);
  const double s_hi = std::isinf(hi) ? 0.0 : Survival(hi);
  const double mass = s_lo - s_hi;
  if (!(mass > 1e-300)) throw ZeroMassError("zero-mass interval");
  // E[x 1{lo < x <= hi}] = lo (S(lo) - S(hi)) + int_lo^hi (S(x) - S(hi)) dx.
  const double upper = std::min(hi, SupportMax());
  double tail = upper > lo ? IntegrateSurvival(lo, upper, s_hi, 1) : 0.0;
  return (lo * mass + tail) / mass;
}

double Distribution::SurvivalPowerIntegralByQuadrature(int64_t m) const {
  if (m < 1) throw std::domain_error("survival power must be >= 1");
  return IntegrateSurvival(0, SupportMax(), 0, m);
}

}  // namespace hiring

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

#include "hiring/policies.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "hiring/analysis.h"

namespace hiring {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int64_t Pow2(int k) { return int64_t{1} << k; }

int64_t CeilScaled(double c, int level) {
  return static_cast<int64_t>(std::ceil(std::ldexp(c, level)));
}

bool Overruns(const Horizon& n, int64_t i, int64_t duration) {
  return n.has_value() && i + duration > *n;
}

}  // namespace

Alg1Policy::Alg1Policy(Horizon n) : n_(n) {}

Decision Alg1Policy::Step(int64_t i, double x) {
  --t_;
  const double tau = std::ldexp(1.0, -level_);
  if (x <= tau) {
    const int64_t duration = 4 * Pow2(level_);
    if (Overruns(n_, i, duration)) return {duration, true};
    if (level_ < kMaxLevel) ++level_;
    visited_mask_ |= uint64_t{1} << level_;
    t_ = Pow2(level_);
    return {duration, false};
  }
  if (t_ == 0) {
    // tau never exceeds 1; only reachable with costs above 1.
    if (level_ > 0) --level_;
    t_ = Pow2(level_);
  }
  return {0, false};
}

int Alg1Policy::levels_visited() const {
  return __builtin_popcountll(visited_mask_);
}

Alg2Policy::Alg2Policy(Horizon n, double c) : n_(n), c_(c) {
  if (!(c > 0 && c <= 2)) throw std::invalid_argument("alg2 needs 0 < c <= 2");
}

std::string Alg2Policy::Name() const {
  std::ostringstream out;
  out << "alg2(c=" << c_ << ")";
  return out.str();
}

Decision Alg2Policy::Step(int64_t i, double x) {
  --t_;
  if (x <= std::ldexp(1.0, -level_)) {
    while (x <= std::ldexp(1.0, -level_) && level_ < kMaxLevel) ++level_;
    const int64_t duration = CeilScaled(2 * c_, level_);
    if (Overruns(n_, i, duration)) return {duration, true};
    t_ = CeilScaled(c_, level_);
    return {duration, false};
  }
  if (t_ == 0) {
    if (level_ > 0) --level_;
    t_ = CeilScaled(c_, level_);
  }
  return {0, false};
}

int64_t Alg2Budget(double c, int level) {
  int64_t total = 0;
  for (int k = 0; k <= level; ++k) total += CeilScaled(c, k);
  return total;
}

bool Alg2BudgetHolds(double c, int max_level) {
  for (int level = 1; level <= max_level; ++level) {
    // Waits at levels level..1, then one step at tau = 1.
    const int64_t until_certain_hire = Alg2Budget(c, level) - CeilScaled(c, 0) + 1;
    if (until_certain_hire > CeilScaled(2 * c, level)) return false;
  }
  return true;
}

Alg3Policy::Alg3Policy(const Distribution& d, Horizon n) : d_(d), n_(n) {}

double Alg3Policy::Threshold(int level) {
  while (static_cast<int>(thresholds_.size()) <= level) {
    thresholds_.push_back(
        d_.Quantile(std::ldexp(1.0, -static_cast<int>(thresholds_.size()))));
  }
  return thresholds_[level];
}

Decision Alg3Policy::Step(int64_t i, double x) {
  --t_;
  if (x <= Threshold(level_)) {
    // Once the stop branch is certain, further halving changes nothing.
    while (x <= Threshold(level_) && level_ < kMaxLevel - 1) {
      ++level_;
      if (Overruns(n_, i, 2 * Pow2(level_))) break;
    }
    if (Overruns(n_, i, 2 * Pow2(level_))) return {*n_ - i + 1, true};
    t_ = Pow2(level_);
    return {2 * Pow2(level_), false};
  }
  if (t_ == 0) {
    if (level_ > 0) --level_;
    t_ = Pow2(level_);
  }
  return {0, false};
}

Alg4Policy::Alg4Policy(Horizon n, int64_t lambda)
    : n_(n), lambda_(lambda), tau_(kInf) {
  if (lambda < 2) throw std::invalid_argument("alg4 needs integer lambda > 1");
}

std::string Alg4Policy::Name() const {
  return "alg4(lambda=" + std::to_string(lambda_) + ")";
}

void Alg4Policy::Enter(int level) {
  tau_ = kInf;
  if (level <= 0) {
    // Level 0 is the initial state: one waiting step with tau = inf.
    j_ = 0;
    t_sample_ = 0;
    t_wait_ = 1;
    return;
  }
  j_ = std::min(level, kMaxLevel - 4);
  max_level_ = std::max(max_level_, j_);
  t_sample_ = Pow2(j_) - 1;
  t_wait_ = lambda_ * t_sample_;
}

Decision Alg4Policy::Step(int64_t i, double x) {
  if (t_sample_ > 0) {
    tau_ = std::min(tau_, x);
    --t_sample_;
    return {0, false};
  }
  if (t_wait_ > 0) {
    --t_wait_;
    if (x <= tau_) {
      if (j_ >= 1) ++phases_hired_;
      const int64_t duration = (1 + lambda_) * Pow2(j_ + 2);
      if (Overruns(n_, i, duration)) return {duration, true};
      Enter(j_ + 1);
      return {duration, false};
    }
    return {0, false};
  }
  if (j_ >= 1) ++phases_expired_;
  Enter(j_ - 1);
  return {0, false};
}

Alg5Policy::Alg5Policy(std::shared_ptr<const std::vector<double>> thresholds,
                       int64_t n)
    : thresholds_(std::move(thresholds)), n_(n) {
  if (static_cast<int64_t>(thresholds_->size()) != n) {
    throw std::invalid_argument("alg5 threshold table does not match n");
  }
}

Decision Alg5Policy::Step(int64_t i, double x) {
  if (x < (*thresholds_)[n_ - i]) return {n_ - i + 1, true};
  return {1, false};
}

std::shared_ptr<const std::vector<double>> Alg5Thresholds(
    const Distribution& d, int64_t n) {
  auto tau = std::make_shared<std::vector<double>>(n, 0.0);
  if (n >= 2) {
    const SequentialTable table = SequentialExpectedCost(d, n - 1);
    for (int64_t k = 1; k < n; ++k) (*tau)[k] = table.tau[k];
    (*tau)[0] = (*tau)[1] + 1;
  }
  return tau;
}

Decision DpPolicyStep(const DpCostRows& table, int64_t n, int64_t i,
                      int64_t covered_ahead, double x) {
  if (static_cast<int64_t>(table.size()) != n + 1) {
    throw TableMismatchError("dp table horizon " +
                             std::to_string(table.size() - 1) +
                             " does not match n=" + std::to_string(n));
  }
  const int64_t left = n - i + 1;
  const int64_t covered = std::clamp<int64_t>(covered_ahead, 0, left);
  const std::vector<long double>& next = table[left - 1];
  long double best = std::numeric_limits<long double>::infinity();
  int64_t best_r = 0;
  if (covered >= 1) best = next[covered - 1];
  for (int64_t r = covered + 1; r <= left; ++r) {
    const long double value = r * static_cast<long double>(x) + next[r - 1];
    if (value < best) {
      best = value;
      best_r = r;
    }
  }
  return {best_r, best_r > 0 && i + best_r - 1 >= n};
}

DpPolicy::DpPolicy(std::shared_ptr<const DpCostRows> table, int64_t n)
    : table_(std::move(table)), n_(n) {
  if (static_cast<int64_t>(table_->size()) != n + 1) {
    throw TableMismatchError("dp table horizon does not match n");
  }
}

Decision DpPolicy::Step(int64_t i, double x) {
  const Decision decision =
      DpPolicyStep(*table_, n_, i, std::max<int64_t>(0, frontier_ - i + 1), x);
  if (decision.duration > 0) {
    frontier_ = std::max(frontier_, i + decision.duration - 1);
  }
  return decision;
}

TwoConcurrentWrapper::TwoConcurrentWrapper(std::unique_ptr<Policy> base,
                                           Horizon n)
    : base_(std::move(base)), n_(n) {}

std::string TwoConcurrentWrapper::Name() const {
  return "two_concurrent(" + base_->Name() + ")" +
         (n_.has_value() ? "" : "+unknown_n");
}

Decision TwoConcurrentWrapper::Step(int64_t i, double x) {
  if (idle_ > 0) {
    --idle_;
    return {0, false};
  }
  const Decision base = base_->Step(++base_clock_, x);
  if (base.duration == 0) return {0, false};
  idle_ = base.duration;
  const int64_t duration = 2 * base.duration;
  const bool stop = n_.has_value() && (base.stop || i + duration - 1 >= *n_);
  return {duration, stop};
}

std::vector<std::string> ValidatePolicySpec(const PolicySpec& spec,
                                            const Distribution& d, int64_t n) {
  std::vector<std::string> errors;
  const std::string& name = spec.name;
  const bool known = name == "alg1" || name == "alg2" || name == "alg3" ||
                     name == "alg4" || name == "alg5" || name == "dp";
  if (!known) {
    errors.push_back("policy: unknown name '" + name +
                     "' (expected alg1, alg2, alg3, alg4, alg5 or dp)");
    return errors;
  }
  if (n < 1) errors.push_back("n: must be >= 1");
  if ((name == "alg1" || name == "alg2") && d.SupportMax() > 1) {
    errors.push_back("dist: " + name +
                     " compares costs with thresholds in [0,1] and needs a law "
                     "supported on [0,1]");
  }
  if (name == "dp" && d.kind() != DistributionKind::kUniform01) {
    errors.push_back("dist: dp is computed for uniform01 costs only");
  }
  if (name == "alg2" && !(spec.c > 0 && spec.c <= 2 &&
                          Alg2BudgetHolds(spec.c, kMaxLevel - 2))) {
    errors.push_back(
        "c: must lie in (0, 2] with each hire lasting until the next certain "
        "one");
  }
  if (name == "alg4" && spec.lambda < 2) {
    errors.push_back("lambda: must be an integer > 1");
  }
  const bool wrappable =
      name == "alg1" || name == "alg2" || name == "alg3" || name == "alg4";
  if (spec.two_concurrent && !wrappable) {
    errors.push_back("two_concurrent: only alg1..alg4 can be wrapped");
  }
  if (spec.unknown_n && !spec.two_concurrent) {
    errors.push_back("unknown_n: requires two_concurrent");
  }
  return errors;
}

PolicyFactory MakePolicyFactory(const PolicySpec& spec, const Distribution& d,
                                int64_t n) {
  const std::vector<std::string> errors = ValidatePolicySpec(spec, d, n);
  if (!errors.empty()) {
    std::string joined;
    for (const std::string& e : errors) joined += (joined.empty() ? "" : "; ") + e;
    throw std::invalid_argument(joined);
  }
  const Horizon horizon = spec.unknown_n ? Horizon() : Horizon(n);
  PolicyFactory base;
  if (spec.name == "alg1") {
    base = [horizon] { return std::make_unique<Alg1Policy>(horizon); };
  } else if (spec.name == "alg2") {
    const double c = spec.c;
    base = [horizon, c] { return std::make_unique<Alg2Policy>(horizon, c); };
  } else if (spec.name == "alg3") {
    base = [horizon, d] { return std::make_unique<Alg3Policy>(d, horizon); };
  } else if (spec.name == "alg4") {
    const int64_t lambda = spec.lambda;
    base = [horizon, lambda] {
      return std::make_unique<Alg4Policy>(horizon, lambda);
    };
  } else if (spec.name == "alg5") {
    auto thresholds = Alg5Thresholds(d, n);
    base = [thresholds, n] {
      return std::make_unique<Alg5Policy>(thresholds, n);
    };
  } else {
    DpOptions options = spec.dp;
    options.keep_full_table = true;
    auto rows = std::make_shared<const DpCostRows>(
        ToLongDoubleRows(ComputeTable(n, options)));
    base = [rows, n] { return std::make_unique<DpPolicy>(rows, n); };
  }
  if (!spec.two_concurrent) return base;
  return [base, horizon]() -> std::unique_ptr<Policy> {
    return std::make_unique<TwoConcurrentWrapper>(base(), horizon);
  };
}

}  // namespace hiring

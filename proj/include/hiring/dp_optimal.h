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

#ifndef HIRING_DP_OPTIMAL_H_
#define HIRING_DP_OPTIMAL_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "hiring/rational.h"

namespace hiring {

class MalformedInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Line {
  int64_t slope = 0;
  Rational intercept;
};

// Lower envelope of lines with positive slopes over x in [0, 1], built by
// adding lines in strictly decreasing slope order. Breakpoints are exact.
// Prefix integrals are exact by default; with prefix_bits > 0 each one is
// floored to a multiple of 2^-prefix_bits, so integrals can only come out
// low, by less than size() * 2^-prefix_bits.
class LowerEnvelope {
 public:
  explicit LowerEnvelope(int prefix_bits = 0) : prefix_bits_(prefix_bits) {}
  void Clear() { hull_.clear(); }
  // Throws MalformedInputError unless slope is positive and below every
  // slope added so far.
  void AddLine(int64_t slope, const Rational& intercept);
  // Integral over [0, 1] of the envelope.
  Rational Integral() const;
  // Integral over [0, 1] of min(cap, envelope).
  Rational ClippedIntegral(const Rational& cap) const;
  size_t size() const { return hull_.size(); }
  // Upper bound on how far Integral or ClippedIntegral can fall below the
  // exact value; zero for an exact envelope.
  Rational ErrorBound() const;

 private:
  struct Piece {
    int64_t slope;
    Rational intercept;
    Rational start;
    Rational prefix;  // integral of the envelope over [0, start]
  };
  int prefix_bits_;
  std::vector<Piece> hull_;
};

// Integral over [0, 1] of min(constant, min_r (slope_r x + intercept_r)).
// Lines may come in any order; duplicate or nonpositive slopes are rejected.
Rational LowerEnvelopeIntegral(std::vector<Line> lines,
                               const std::optional<Rational>& constant);

struct DpOptions {
  // Each entry is rounded down to the best fraction with at most this
  // denominator. Default 2^64.
  mpz_class max_denominator = mpz_class(1) << 64;
  // Retain every row; needed by the optimal policy and the CSV export.
  bool keep_full_table = false;
  uint64_t memory_limit_bytes = uint64_t{2} << 30;
  // Called after each finished row with the row index.
  std::function<void(int64_t)> progress;
};

// C(i, j): expected remaining cost of the optimal online policy for uniform
// costs with i steps left, of which the next j are already covered.
class DpTable {
 public:
  int64_t n() const { return n_; }
  const mpz_class& max_denominator() const { return max_denominator_; }
  bool has_full_table() const { return !rows_.empty(); }

  // Needs the full table.
  const Rational& C(int64_t i, int64_t j) const;
  const std::vector<Rational>& Row(int64_t i) const;
  // Row n, always retained.
  const std::vector<Rational>& LastRow() const { return last_row_; }
  // C(i, 0) for i = 0..n, always retained.
  const std::vector<Rational>& FirstColumn() const { return first_column_; }

 private:
  friend DpTable ComputeTable(int64_t n, const DpOptions& options);
  int64_t n_ = 0;
  mpz_class max_denominator_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> last_row_;
  std::vector<Rational> first_column_;
};

DpTable ComputeTable(int64_t n, const DpOptions& options = {});

// C(n, 0) / (H_{n+1} - 1) with the harmonic number summed exactly.
double LowerBoundRatio(const DpTable& table);
// The same ratio for every horizon 1..n (entry 0 unused).
std::vector<double> LowerBoundCurve(const DpTable& table);

// Expected optimal online cost for n <= 6 by backward induction with costs
// restricted to the m-point midpoint grid on [0, 1]. Shares no code with
// ComputeTable.
double GridOracle(int64_t n, int64_t m);

// One line per entry: i,j,numerator,denominator. Needs the full table.
void WriteTableCsv(const DpTable& table, std::ostream& out);

// Rows of the full table as long doubles, for fast policy evaluation.
std::vector<std::vector<long double>> ToLongDoubleRows(const DpTable& table);

}  // namespace hiring

#endif  // HIRING_DP_OPTIMAL_H_

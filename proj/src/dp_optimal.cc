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

#include "hiring/dp_optimal.h"

#include <algorithm>
#include <limits>
#include <string>

namespace hiring {
namespace {

// Integral over [a, b] of slope x + intercept.
Rational LineIntegral(int64_t slope, const Rational& intercept,
                      const Rational& a, const Rational& b) {
  Rational out = b * b - a * a;
  out *= static_cast<long>(slope);
  out /= 2;
  out += intercept * (b - a);
  return out;
}

Rational Evaluate(int64_t slope, const Rational& intercept,
                  const Rational& x) {
  Rational out = x * static_cast<long>(slope);
  out += intercept;
  return out;
}

// Largest multiple of 2^-bits that is <= x.
void FloorToDyadic(Rational& x, int bits) {
  mpz_class scaled = x.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits);
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
  mpz_class den;
  mpz_setbit(den.get_mpz_t(), bits);
  x = Rational(scaled, den);
  x.canonicalize();
}

// Entry (i, j) with an exact envelope built from scratch.
Rational ExactEntry(const std::vector<Rational>& prev, int64_t i, int64_t j) {
  LowerEnvelope envelope;
  for (int64_t r = i; r >= j + 1; --r) envelope.AddLine(r, prev[r - 1]);
  return j >= 1 ? envelope.ClippedIntegral(prev[j - 1]) : envelope.Integral();
}

// Rough footprint of one stored entry with D-bounded numerator and
// denominator.
uint64_t BytesPerEntry(const mpz_class& max_denominator) {
  const uint64_t limbs = mpz_sizeinbase(max_denominator.get_mpz_t(), 2) / 64 + 2;
  return sizeof(Rational) + 2 * limbs * sizeof(mp_limb_t);
}

}  // namespace

void LowerEnvelope::AddLine(int64_t slope, const Rational& intercept) {
  if (slope <= 0) throw MalformedInputError("slopes must be positive");
  if (!hull_.empty() && slope >= hull_.back().slope) {
    throw MalformedInputError("slopes must be added in decreasing order");
  }
  // A flatter line that is no higher at a piece's left end beats the piece on
  // all of it.
  while (!hull_.empty()) {
    const Piece& top = hull_.back();
    if (Evaluate(slope, intercept, top.start) >
        Evaluate(top.slope, top.intercept, top.start)) {
      break;
    }
    hull_.pop_back();
  }
  if (hull_.empty()) {
    hull_.push_back({slope, intercept, Rational(0), Rational(0)});
    return;
  }
  const Piece& top = hull_.back();
  Rational cross = (intercept - top.intercept) / (top.slope - slope);
  // Past x = 1 the line never matters: any later, flatter line that removes
  // `top` is also below this one from there on.
  if (cross >= 1) return;
  Rational prefix =
      top.prefix + LineIntegral(top.slope, top.intercept, top.start, cross);
  if (prefix_bits_ > 0) FloorToDyadic(prefix, prefix_bits_);
  hull_.push_back({slope, intercept, std::move(cross), std::move(prefix)});
}

Rational LowerEnvelope::ErrorBound() const {
  if (prefix_bits_ == 0) return 0;
  // One floor per piece along the prefix chain.
  mpz_class den;
  mpz_setbit(den.get_mpz_t(), prefix_bits_);
  Rational out(static_cast<unsigned long>(hull_.size()), den);
  out.canonicalize();
  return out;
}

Rational LowerEnvelope::Integral() const {
  if (hull_.empty()) throw MalformedInputError("empty envelope");
  const Piece& top = hull_.back();
  return top.prefix + LineIntegral(top.slope, top.intercept, top.start, 1);
}

Rational LowerEnvelope::ClippedIntegral(const Rational& cap) const {
  if (hull_.empty()) return cap;
  // The envelope is increasing, so find the last piece that starts below the
  // cap.
  size_t lo = 0;
  size_t hi = hull_.size();
  while (lo < hi) {
    const size_t mid = (lo + hi) / 2;
    const Piece& p = hull_[mid];
    if (Evaluate(p.slope, p.intercept, p.start) < cap) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == 0) return cap;
  const Piece& p = hull_[lo - 1];
  Rational cross = (cap - p.intercept) / p.slope;
  if (cross >= 1) return Integral();
  return p.prefix + LineIntegral(p.slope, p.intercept, p.start, cross) +
         cap * (1 - cross);
}

Rational LowerEnvelopeIntegral(std::vector<Line> lines,
                               const std::optional<Rational>& constant) {
  if (lines.empty()) throw MalformedInputError("no lines");
  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return a.slope > b.slope; });
  for (size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].slope == lines[k - 1].slope) {
      throw MalformedInputError("duplicate slope " +
                                std::to_string(lines[k].slope));
    }
  }
  LowerEnvelope envelope;
  for (const Line& line : lines) envelope.AddLine(line.slope, line.intercept);
  return constant ? envelope.ClippedIntegral(*constant) : envelope.Integral();
}

const Rational& DpTable::C(int64_t i, int64_t j) const {
  return Row(i).at(j);
}

const std::vector<Rational>& DpTable::Row(int64_t i) const {
  if (i == n_) return last_row_;
  if (!has_full_table()) {
    throw std::logic_error("row " + std::to_string(i) +
                           " not retained; request the full table");
  }
  return rows_.at(i);
}

DpTable ComputeTable(int64_t n, const DpOptions& options) {
  if (n < 1) throw std::invalid_argument("horizon must be >= 1");
  const uint64_t per_entry = BytesPerEntry(options.max_denominator);
  const long double entries =
      options.keep_full_table ? (n + 1.0L) * (n + 2.0L) / 2 : 3.0L * (n + 1);
  if (entries * per_entry > options.memory_limit_bytes) {
    throw ResourceLimitError(
        "table for n=" + std::to_string(n) + " needs about " +
        std::to_string(static_cast<uint64_t>(entries * per_entry) >> 20) +
        " MiB, over the configured limit");
  }

  DpTable table;
  table.n_ = n;
  table.max_denominator_ = options.max_denominator;
  table.first_column_.assign(n + 1, Rational(0));
  if (options.keep_full_table) table.rows_.reserve(n + 1);

  std::vector<Rational> prev = {Rational(0)};
  std::vector<Rational> cur;
  // Exact prefix sums grow with the hull. A grid far below the 1/D^2 spacing
  // of D-bounded fractions keeps them short and only ever rounds down.
  const int grid_bits = static_cast<int>(
      2 * mpz_sizeinbase(options.max_denominator.get_mpz_t(), 2) + 64);
  LowerEnvelope envelope(grid_bits);
  for (int64_t i = 1; i <= n; ++i) {
    cur.assign(i + 1, Rational(0));
    envelope.Clear();
    // Entry j offers hires r = j+1..i, so sweeping j downward adds the lines
    // in decreasing slope order.
    for (int64_t j = i - 1; j >= 0; --j) {
      envelope.AddLine(j + 1, prev[j]);
      const Rational low = j >= 1 ? envelope.ClippedIntegral(prev[j - 1])
                                  : envelope.Integral();
      // The exact value lies in [low, low + error]. Rounding the top end is
      // correct unless a D-bounded fraction sits inside that window.
      cur[j] = BestLowerApproximation(low + envelope.ErrorBound(),
                                      options.max_denominator);
      if (cur[j] > low) {
        cur[j] = BestLowerApproximation(ExactEntry(prev, i, j),
                                        options.max_denominator);
      }
    }
    table.first_column_[i] = cur[0];
    if (options.keep_full_table) {
      if (table.rows_.empty()) table.rows_.push_back(prev);
      table.rows_.push_back(cur);
    }
    std::swap(prev, cur);
    if (options.progress) options.progress(i);
  }
  table.last_row_ = prev;
  return table;
}

double LowerBoundRatio(const DpTable& table) {
  const Rational opt = HarmonicRational(table.n() + 1) - 1;
  return ToDouble(table.FirstColumn()[table.n()] / opt);
}

std::vector<double> LowerBoundCurve(const DpTable& table) {
  std::vector<double> curve(table.n() + 1, 0);
  Rational opt = 0;
  for (int64_t i = 1; i <= table.n(); ++i) {
    opt += Rational(1, static_cast<unsigned long>(i + 1));
    curve[i] = ToDouble(table.FirstColumn()[i] / opt);
  }
  return curve;
}

double GridOracle(int64_t n, int64_t m) {
  if (n < 1 || n > 6) throw std::invalid_argument("grid oracle needs 1<=n<=6");
  if (m < 1) throw std::invalid_argument("grid needs m >= 1");
  std::vector<long double> grid(m);
  for (int64_t k = 0; k < m; ++k) grid[k] = (k + 0.5L) / m;
  // g[j] holds the value with i-1 steps left and j covered.
  std::vector<long double> g = {0};
  for (int64_t i = 1; i <= n; ++i) {
    std::vector<long double> next(i + 1, 0);
    for (int64_t j = 0; j < i; ++j) {
      long double sum = 0;
      for (long double x : grid) {
        long double best = j >= 1 ? g[j - 1]
                                  : std::numeric_limits<long double>::max();
        for (int64_t r = j + 1; r <= i; ++r) {
          best = std::min(best, r * x + g[r - 1]);
        }
        sum += best;
      }
      next[j] = sum / m;
    }
    g = std::move(next);
  }
  return static_cast<double>(g[0]);
}

void WriteTableCsv(const DpTable& table, std::ostream& out) {
  out << "i,j,numerator,denominator\n";
  for (int64_t i = 0; i <= table.n(); ++i) {
    const std::vector<Rational>& row = table.Row(i);
    for (size_t j = 0; j < row.size(); ++j) {
      out << i << ',' << j << ',' << row[j].get_num() << ','
          << row[j].get_den() << '\n';
    }
  }
}

std::vector<std::vector<long double>> ToLongDoubleRows(const DpTable& table) {
  std::vector<std::vector<long double>> rows(table.n() + 1);
  for (int64_t i = 0; i <= table.n(); ++i) {
    const std::vector<Rational>& row = table.Row(i);
    rows[i].reserve(row.size());
    for (const Rational& v : row) rows[i].push_back(v.get_d());
  }
  return rows;
}

}  // namespace hiring

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

#ifndef HIRING_RATIONAL_H_
#define HIRING_RATIONAL_H_

#include <cstdint>

#include <gmpxx.h>

namespace hiring {

// Arbitrary-precision fraction, always canonical (lowest terms, den > 0).
using Rational = mpq_class;

// Largest p/q <= x with 1 <= q <= max_denominator, from the convergents and
// semiconvergents of x. Cost is linear in the number of continued
// fraction terms of x.
Rational BestLowerApproximation(const Rational& x,
                                const mpz_class& max_denominator);

// H_n = 1 + 1/2 + ... + 1/n, exactly.
Rational HarmonicRational(int64_t n);

inline double ToDouble(const Rational& x) { return x.get_d(); }

}  // namespace hiring

#endif  // HIRING_RATIONAL_H_

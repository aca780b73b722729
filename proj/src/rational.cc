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

#include "hiring/rational.h"

#include <stdexcept>

namespace hiring {

Rational BestLowerApproximation(const Rational& x,
                                const mpz_class& max_denominator) {
  if (max_denominator < 1) {
    throw std::invalid_argument("denominator bound must be >= 1");
  }
  if (x.get_den() <= max_denominator) return x;
  // Continued fraction of x by Euclid on (u, v). Convergents h/k with even
  // index lie below x; prev2 and prev1 hold the last two.
  mpz_class u = x.get_num();
  mpz_class v = x.get_den();
  mpz_class a, r;
  mpz_class h_prev2 = 0, k_prev2 = 1;
  mpz_class h_prev1 = 1, k_prev1 = 0;
  mpz_class h, k;
  bool even = true;
  while (true) {
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    k = a * k_prev1 + k_prev2;
    if (k > max_denominator) {
      if (!even) return Rational(h_prev1, k_prev1);
      // Largest semiconvergent below x that fits.
      mpz_class t = (max_denominator - k_prev2) / k_prev1;
      Rational out(t * h_prev1 + h_prev2, t * k_prev1 + k_prev2);
      out.canonicalize();
      return out;
    }
    h = a * h_prev1 + h_prev2;
    h_prev2.swap(h_prev1);
    h_prev1.swap(h);
    k_prev2.swap(k_prev1);
    k_prev1.swap(k);
    even = !even;
    // Denominators stay below the bound until the expansion ends, so the
    // loop always returns before r reaches 0.
    u.swap(v);
    v.swap(r);
  }
}

Rational HarmonicRational(int64_t n) {
  Rational sum = 0;
  for (int64_t i = 1; i <= n; ++i) {
    sum += Rational(1, static_cast<unsigned long>(i));
  }
  return sum;
}

}  // namespace hiring

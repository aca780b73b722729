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

#ifndef HIRING_RNG_H_
#define HIRING_RNG_H_

#include <cstdint>
#include <limits>

namespace hiring {

// Deterministic random stream keyed by (seed, stream index). Streams with
// distinct indices are derived by hashing the pair, so replication r of a
// batch always sees the same cost sequence regardless of scheduling.
// xoshiro256** core, seeded through splitmix64.
class RngStream {
 public:
  using result_type = uint64_t;

  RngStream(uint64_t seed, uint64_t stream);

  uint64_t NextU64();
  // Uniform on [0, 1) with 53 random bits.
  double NextUniform();

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return NextU64(); }

 private:
  uint64_t seed_;
  uint64_t stream_;
  uint64_t s_[4];
};

}  // namespace hiring

#endif  // HIRING_RNG_H_

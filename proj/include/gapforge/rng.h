// Copyright 2026 The gapforge Authors.
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

#ifndef GAPFORGE_RNG_H_
#define GAPFORGE_RNG_H_

#include <cstdint>
#include <random>

#include "gapforge/field.h"

namespace gapforge {

// All randomness in the library flows through std::mt19937_64, whose output
// sequence is fixed by the C++ standard, so seeded results reproduce across
// compilers and platforms. Seeds for independent streams are derived with
// SplitMix64; bounded integers use the multiply-high reduction below rather
// than std::uniform_int_distribution (whose algorithm is unspecified).

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of sub-stream `stream` of `seed`.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL));
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform in [0, bound); bound > 0.
  uint64_t below(uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * bound) >> 64);
  }

  // Uniform field element. Each 64-bit draw is consumed as 32 bit pairs,
  // least significant pair first.
  Gf4 element() {
    if (pairs_left_ == 0) {
      buffer_ = engine_();
      pairs_left_ = 32;
    }
    Gf4 e = Gf4::from_bits(static_cast<unsigned>(buffer_ & 3u));
    buffer_ >>= 2;
    --pairs_left_;
    return e;
  }

  FVector vector(int dim) {
    FVector v = FVector::zero(dim);
    for (int i = 0; i < dim; ++i) v.set(i, element());
    return v;
  }

  // Uniform vector with entries in {0, 1}.
  FVector binary_vector(int dim) {
    FVector v = FVector::zero(dim);
    for (int i = 0; i < dim; ++i) v.set(i, Gf4::from_bits(static_cast<unsigned>(below(2))));
    return v;
  }

  FVector nonzero_vector(int dim) {
    for (;;) {
      FVector v = vector(dim);
      if (!v.is_zero()) return v;
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  uint64_t buffer_ = 0;
  int pairs_left_ = 0;
};

}  // namespace gapforge

#endif  // GAPFORGE_RNG_H_

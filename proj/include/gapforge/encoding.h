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

#ifndef GAPFORGE_ENCODING_H_
#define GAPFORGE_ENCODING_H_

// The compression layer: ell matrices A_1..A_ell in F^{h x m} and the maps
//
//   g(v)        = (A_1 v, ..., A_ell v)                  in F^{ell h}
//   f(alpha, v) = (alpha^T A_1 v, ..., alpha^T A_ell v)  in F^{ell}
//
// together with exact checks of the three conditions a scheme needs and a
// deterministic construction by conditional expectations.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapforge/field.h"
#include "gapforge/rational.h"

namespace gapforge {

inline constexpr uint64_t kDefaultSchemeBudget = uint64_t{1} << 32;

enum class Provenance { kSeededRandom, kDerandomized };

class EncodingScheme {
 public:
  EncodingScheme(int h, int m, std::vector<FMat> mats, Provenance provenance, uint64_t seed = 0);

  int h() const { return h_; }
  int m() const { return m_; }
  int ell() const { return static_cast<int>(mats_.size()); }
  const FMat& matrix(int i) const { return mats_[i]; }
  const std::vector<FMat>& matrices() const { return mats_; }
  Provenance provenance() const { return provenance_; }
  uint64_t seed() const { return seed_; }
  // "seeded-random(<seed>)" or "derandomized".
  std::string provenance_token() const;

  friend bool operator==(const EncodingScheme&, const EncodingScheme&) = default;

 private:
  int h_;
  int m_;
  std::vector<FMat> mats_;
  Provenance provenance_;
  uint64_t seed_;
};

// i.i.d. uniform entries from Rng(seed), matrix by matrix, row-major.
EncodingScheme sample_scheme(uint64_t seed, int h, int m, int ell);

FVector encode_g(const EncodingScheme& s, const FVector& v);
// Evaluated directly as alpha^T (A_i v); equals block_linear(alpha, g(v)).
FVector encode_f(const EncodingScheme& s, const FVector& alpha, const FVector& v);

// Condition (injective): g(v) != 0 for every nonzero v in {0,1}^m.
// Condition (alpha): f(alpha, v) != f(alpha, u) for distinct v, u in V and
//   nonzero alpha.
// Condition (self-correction): f(alpha, v + w) != f(alpha', u + w) for
//   distinct v, u, w in V and nonzero alpha, alpha'.
struct SchemeWitness {
  enum class Condition { kInjective, kAlpha, kSelfCorrection };
  Condition condition;
  std::vector<FVector> vectors;  // {v} | {v, u} | {v, u, w}
  std::vector<FVector> alphas;   // {} | {alpha} | {alpha, alpha'}
};

struct SchemeReport {
  bool cond_g_injective = true;
  bool cond_alpha = true;
  bool cond_selfcorr = true;
  // Witness for the first failing condition in the order above.
  std::optional<SchemeWitness> counterexample;

  bool all() const { return cond_g_injective && cond_alpha && cond_selfcorr; }
};

// Exact verification. The injectivity condition is decided by Gaussian
// elimination over GF(2) on the columns g(e_j), which is exact for every m;
// the other two by enumeration over all nonzero alpha (and alpha'). V is
// deduplicated. Throws BudgetExceeded when |F|^h |V|^2 or |F|^{2h} |V|^3
// exceeds the budget.
SchemeReport check_scheme(const EncodingScheme& s, const std::vector<FVector>& vectors,
                          const FVector& target, uint64_t budget = kDefaultSchemeBudget);

// A nonzero v in {0,1}^m with g(v) = 0, if one exists.
std::optional<FVector> binary_kernel_vector(const EncodingScheme& s);

struct CollisionQuery {
  FVector b, c;  // in F^h
  FVector v, u;  // in F^m
};

struct FrequencyEstimate {
  uint64_t hits = 0;
  uint64_t samples = 0;
  double frequency() const { return samples ? static_cast<double>(hits) / samples : 0.0; }
};

// Fraction of fresh uniform A in F^{h x m} with b^T A v = c^T A u. With
// `check_preconditions` the inputs must satisfy b, c != 0 and v != a u for
// every nonzero a; violations are a DomainError.
FrequencyEstimate empirical_lemma2(const CollisionQuery& q, uint64_t samples, uint64_t seed,
                                   bool check_preconditions = true);
// The same probability by enumerating all |F|^{hm} matrices.
Rational exact_collision_probability(const CollisionQuery& q, uint64_t budget = uint64_t{1} << 24);

// A_i selects coordinates [(i-1)h, ih): m/h matrices. m must be a multiple of
// h.
EncodingScheme derandomize_projections(int m, int h);

// Greedy choice of A coordinate by coordinate minimizing the conditional
// expectation of #{i : A . C_i = 0} under uniform completion; ties go to the
// smallest field element. At most floor(N/4) products vanish. Every
// constraint must be nonzero and of equal dimension.
FVector conditional_expectation_vector(const std::vector<FVector>& constraints);
uint64_t count_zero_products(const FVector& a, const std::vector<FVector>& constraints);

struct DerandomizedScheme {
  EncodingScheme scheme;
  int projections = 0;
  int rounds = 0;
  // All alpha- and self-correction constraints, counted over ordered vector
  // tuples and nonzero alphas.
  uint64_t constraint_count = 0;
  // Distinct constraint vectors still unsatisfied before each round.
  std::vector<uint64_t> residual;
};

// ceil(m/h) projection matrices (the last one zero-padded when h does not
// divide m), then conditional-expectation rounds on the still violated
// constraint vectors until none remain.
DerandomizedScheme derandomize_scheme(const std::vector<FVector>& vectors, const FVector& target,
                                      int h, int m, uint64_t budget = kDefaultSchemeBudget);

// ceil(log_4 n); 0 for n <= 1.
int ceil_log4(uint64_t n);

// All 4^h vectors of F^h in lexicographic order; index i has digits of i in
// base 4, most significant first.
FVector vector_from_index(int dim, uint64_t index);
uint64_t index_of_vector(const FVector& v);

}  // namespace gapforge

#endif  // GAPFORGE_ENCODING_H_

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


#ifndef GAPFORGE_CSP_H_
#define GAPFORGE_CSP_H_

// The encoded CSP. Variables x_a are indexed by tuples a = (a_1, ..., a_k)
// of F^h, values live in F^ell, and there are three constraint families:
//
//   C1 (a, b):     x_{a+b} = x_a + x_b                      (ordered pairs)
//   C2 (i, a, al): x_{a + al e_i} - x_a = f(al, v), v in V_i
//   C3 (a, al):    x_{a + (al, ..., al)} - x_a = f(al, t)
//
// A tuple is packed as an integer with two bits per digit, first digit most
// significant, so numeric order is lexicographic order and tuple addition is
// XOR.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gapforge/cliquered.h"
#include "gapforge/encoding.h"
#include "gapforge/field.h"
#include "gapforge/rational.h"

namespace gapforge {

inline constexpr uint64_t kDefaultCspBudget = uint64_t{1} << 30;

using Tuple = uint64_t;

class CspInstance {
 public:
  // scheme.m() must equal inst.dim(); k * h <= 31.
  CspInstance(VectorSumInstance inst, EncodingScheme scheme);

  int k() const { return k_; }
  int h() const { return h_; }
  int ell() const { return ell_; }
  const VectorSumInstance& instance() const { return inst_; }
  const EncodingScheme& scheme() const { return scheme_; }

  // |F|^{kh}.
  uint64_t num_tuples() const { return uint64_t{1} << (2 * k_ * h_); }
  uint64_t num_alphas() const { return uint64_t{1} << (2 * h_); }

  // Digit block i of a tuple, as an alpha index.
  uint64_t component(Tuple a, int i) const {
    return (a >> (2 * h_ * (k_ - 1 - i))) & (num_alphas() - 1);
  }
  Tuple shift_component(Tuple a, int i, uint64_t alpha) const {
    return a ^ (alpha << (2 * h_ * (k_ - 1 - i)));
  }
  Tuple shift_all(Tuple a, uint64_t alpha) const { return a ^ replicate(alpha); }
  Tuple replicate(uint64_t alpha) const;
  FVector tuple_vector(Tuple a) const { return vector_from_index(k_ * h_, a); }

  // f(al, v) for v in V_i, ascending and distinct.
  const std::vector<FVector>& allowed(int i, uint64_t alpha) const {
    return allowed_[i * num_alphas() + alpha];
  }
  bool is_allowed(int i, uint64_t alpha, const FVector& diff) const;
  // f(al, t).
  const FVector& target_code(uint64_t alpha) const { return target_code_[alpha]; }

  // Exact family sizes: 4^{2kh}; 4^{(k+1)h} per i; 4^{(k+1)h}.
  BigInt c1_count() const;
  BigInt c2_count_per_i() const;
  BigInt c3_count() const;

 private:
  VectorSumInstance inst_;
  EncodingScheme scheme_;
  int k_, h_, ell_;
  std::vector<std::vector<FVector>> allowed_;
  std::vector<FVector> target_code_;
};

// A total map from tuples to F^ell, stored as a flat arena of packed words.
class Assignment {
 public:
  Assignment(uint64_t num_tuples, int ell);

  uint64_t num_tuples() const { return n_; }
  int ell() const { return ell_; }
  FVector get(Tuple a) const {
    return FVector::from_words(ell_, std::span<const uint64_t>(data_.data() + a * w_, static_cast<size_t>(w_)));
  }
  void set(Tuple a, const FVector& v);
  std::span<const uint64_t> raw(Tuple a) const { return {data_.data() + a * w_, static_cast<size_t>(w_)}; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  uint64_t n_;
  int ell_;
  int w_;
  std::vector<uint64_t> data_;
};

// x_a = sum_i F(a_i, c_i) with every c_i in F^{h ell}.
Assignment linear_assignment(const CspInstance& csp, const std::vector<FVector>& cs);

// x_a = f(a_1, v_1) + ... + f(a_k, v_k) for the selected v_i; the
// selection's indices must be valid (DimensionError otherwise).
Assignment honest_assignment(const CspInstance& csp, const SelectionCertificate& sel);

// Single-constraint predicates.
bool c1_satisfied(const CspInstance& csp, const Assignment& x, Tuple a, Tuple b);
bool c2_satisfied(const CspInstance& csp, const Assignment& x, int i, Tuple a, uint64_t alpha);
bool c3_satisfied(const CspInstance& csp, const Assignment& x, Tuple a, uint64_t alpha);

struct SatReport {
  bool exact = true;
  uint64_t samples = 0;  // per family, sampled mode only
  uint64_t seed = 0;

  Rational c1_fraction;
  std::vector<Rational> c2_fraction_per_i;
  Rational c3_fraction;
  // Indexed by alpha; alpha = 0 is left empty (those constraints touch a
  // single variable). Filled in exhaustive mode only.
  std::vector<std::vector<Rational>> c2_fraction_per_i_alpha;
  std::vector<Rational> c3_fraction_per_alpha;

  bool all_satisfied() const;
};

struct EvalMode {
  bool exhaustive = true;
  uint64_t samples = 0;
  uint64_t seed = 0;
  uint64_t budget = kDefaultCspBudget;

  static EvalMode exact(uint64_t budget = kDefaultCspBudget) { return {true, 0, 0, budget}; }
  static EvalMode sampled(uint64_t samples, uint64_t seed) { return {false, samples, seed, 0}; }
};

SatReport evaluate(const CspInstance& csp, const Assignment& x, const EvalMode& mode);

struct Decoding {
  std::vector<FVector> c;  // k vectors in F^{h ell}
  Rational agreement;
  bool exact = true;
};

// Exact: every (c_1, ..., c_k) in lexicographic order, first maximum kept;
// needs 4^{kh ell} * 4^{kh} within the budget.
Decoding linearity_decode(const CspInstance& csp, const Assignment& x,
                          uint64_t budget = kDefaultCspBudget);
// Self-correction by plurality on the basis tuples, then sampled agreement.
Decoding linearity_decode_sampled(const CspInstance& csp, const Assignment& x, uint64_t samples,
                                  uint64_t seed);

// Fraction of tuples on which two assignments agree.
Rational agreement(const Assignment& x, const Assignment& y);

}  // namespace gapforge

#endif  // GAPFORGE_CSP_H_

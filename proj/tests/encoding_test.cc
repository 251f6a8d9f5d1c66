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


#include "gapforge/encoding.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "gapforge/errors.h"
#include "gapforge/rng.h"

namespace gapforge {
namespace {

std::vector<FVector> all_vectors(int dim) {
  std::vector<FVector> out;
  for (uint64_t i = 0; i < (uint64_t{1} << (2 * dim)); ++i) out.push_back(vector_from_index(dim, i));
  return out;
}

// Direct evaluation of the three conditions from their definitions.
SchemeReport oracle_check(const EncodingScheme& s, const std::vector<FVector>& vs) {
  SchemeReport r;
  for (uint64_t mask = 1; mask < (uint64_t{1} << s.m()); ++mask) {
    if (encode_g(s, FVector::from_binary_mask(s.m(), mask)).is_zero()) r.cond_g_injective = false;
  }
  std::vector<FVector> alphas = all_vectors(s.h());
  alphas.erase(alphas.begin());
  for (const FVector& v : vs)
    for (const FVector& u : vs) {
      if (v == u) continue;
      for (const FVector& a : alphas)
        if (encode_f(s, a, v) == encode_f(s, a, u)) r.cond_alpha = false;
      for (const FVector& w : vs) {
        if (w == v || w == u) continue;
        for (const FVector& a : alphas)
          for (const FVector& b : alphas)
            if (encode_f(s, a, v + w) == encode_f(s, b, u + w)) r.cond_selfcorr = false;
      }
    }
  return r;
}

std::vector<FVector> random_binary_set(Rng& rng, int m, int count) {
  std::set<FVector> vs;
  while (static_cast<int>(vs.size()) < count) vs.insert(rng.binary_vector(m));
  return {vs.begin(), vs.end()};
}

TEST(SampleSchemeTest, Deterministic) {
  EXPECT_EQ(sample_scheme(1, 1, 1, 1), sample_scheme(1, 1, 1, 1));
  EXPECT_EQ(sample_scheme(1, 2, 3, 4).provenance_token(), "seeded-random(1)");
}

TEST(SampleSchemeTest, EntriesUniformOverSeeds) {
  int counts[4] = {0, 0, 0, 0};
  const int n = 100000;
  for (int seed = 1; seed <= n; ++seed) ++counts[sample_scheme(seed, 1, 1, 1).matrix(0).at(0, 0).bits()];
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / n, 0.25, 0.01);
}

TEST(SampleSchemeTest, DifferentSeedsDiffer) {
  int differ = 0;
  for (int s = 0; s < 1000; ++s) differ += sample_scheme(2 * s, 2, 4, 3) != sample_scheme(2 * s + 1, 2, 4, 3);
  EXPECT_GE(differ, 990);
}

TEST(EncodeTest, LinearityAndIdentity) {
  Rng rng(4);
  const EncodingScheme s = sample_scheme(8, 3, 7, 5);
  EXPECT_TRUE(encode_g(s, FVector::zero(7)).is_zero());
  for (int trial = 0; trial < 500; ++trial) {
    const FVector v = rng.vector(7), u = rng.vector(7);
    const FVector a = rng.vector(3), b = rng.vector(3);
    EXPECT_EQ(encode_g(s, v + u), encode_g(s, v) + encode_g(s, u));
    EXPECT_EQ(encode_f(s, a, v), block_linear(a, encode_g(s, v)));
    EXPECT_EQ(encode_f(s, a, v + u), encode_f(s, a, v) + encode_f(s, a, u));
    EXPECT_EQ(encode_f(s, a + b, v), encode_f(s, a, v) + encode_f(s, b, v));
  }
  EXPECT_TRUE(encode_f(s, FVector::zero(3), rng.vector(7)).is_zero());
  EXPECT_TRUE(encode_f(s, rng.vector(3), FVector::zero(7)).is_zero());
  EXPECT_THROW(encode_g(s, FVector::zero(6)), DimensionError);
}

TEST(EncodeTest, SingleProjection) {
  const FMat a = FMat::from_rows({FVector::from_digits("100"), FVector::from_digits("010")});
  const EncodingScheme s(2, 3, {a}, Provenance::kDerandomized);
  EXPECT_EQ(encode_g(s, FVector::from_digits("231")), FVector::from_digits("23"));
}

TEST(CheckSchemeTest, ProjectionsAreInjective) {
  const EncodingScheme s = derandomize_projections(6, 2);
  const SchemeReport r = check_scheme(s, {}, FVector::zero(6));
  EXPECT_TRUE(r.cond_g_injective);
  EXPECT_EQ(s.ell(), 3);
}

TEST(CheckSchemeTest, ZeroMatrixFailsAlphaWithWitness) {
  const EncodingScheme s(1, 3, {FMat(1, 3)}, Provenance::kDerandomized);
  const std::vector<FVector> vs = {FVector::from_digits("100"), FVector::from_digits("010")};
  const SchemeReport r = check_scheme(s, vs, FVector::zero(3));
  EXPECT_FALSE(r.cond_alpha);
  EXPECT_FALSE(r.cond_g_injective);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(r.counterexample->condition, SchemeWitness::Condition::kInjective);
  const auto k = binary_kernel_vector(s);
  ASSERT_TRUE(k.has_value());
  EXPECT_TRUE(k->is_binary());
  EXPECT_FALSE(k->is_zero());
}

TEST(CheckSchemeTest, MatchesDirectEvaluation) {
  Rng rng(31);
  int disagreements = 0, passes = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int h = 1 + static_cast<int>(rng.below(2));
    const int m = 3 + static_cast<int>(rng.below(4));
    const int ell = 1 + static_cast<int>(rng.below(4));
    const EncodingScheme s = sample_scheme(rng.next(), h, m, ell);
    const auto vs = random_binary_set(rng, m, 2 + static_cast<int>(rng.below(4)));
    const SchemeReport got = check_scheme(s, vs, FVector::zero(m));
    const SchemeReport want = oracle_check(s, vs);
    disagreements += got.cond_g_injective != want.cond_g_injective ||
                     got.cond_alpha != want.cond_alpha || got.cond_selfcorr != want.cond_selfcorr;
    passes += got.all();
    EXPECT_EQ(got.counterexample.has_value(), !got.all());
    if (got.counterexample && got.counterexample->condition == SchemeWitness::Condition::kSelfCorrection) {
      const auto& w = *got.counterexample;
      EXPECT_EQ(encode_f(s, w.alphas[0], w.vectors[0] + w.vectors[2]),
                encode_f(s, w.alphas[1], w.vectors[1] + w.vectors[2]));
    }
  }
  EXPECT_EQ(disagreements, 0);
  EXPECT_GT(passes, 0);
}

TEST(CheckSchemeTest, BudgetExceeded) {
  Rng rng(2);
  const auto vs = random_binary_set(rng, 8, 10);
  EXPECT_THROW(check_scheme(sample_scheme(1, 2, 8, 3), vs, FVector::zero(8), 1000), BudgetExceeded);
}

TEST(CollisionTest, EmpiricalNearQuarter) {
  const CollisionQuery q{FVector::from_digits("12"), FVector::from_digits("31"),
                      FVector::from_digits("101"), FVector::from_digits("011")};
  const FrequencyEstimate est = empirical_lemma2(q, 100000, 17);
  const double sigma = std::sqrt(0.25 * 0.75 / 1e5);
  EXPECT_NEAR(est.frequency(), 0.25, 3 * sigma);
  EXPECT_EQ(exact_collision_probability(CollisionQuery{FVector::from_digits("1"), FVector::from_digits("2"),
                                     FVector::from_digits("10"), FVector::from_digits("01")}),
            Rational(1, 4));
}

TEST(CollisionTest, IdenticalSidesAlwaysEqual) {
  const FVector b = FVector::from_digits("21"), v = FVector::from_digits("110");
  EXPECT_THROW(empirical_lemma2({b, b, v, v}, 10, 1), DomainError);
  EXPECT_EQ(empirical_lemma2({b, b, v, v}, 1000, 1, false).hits, 1000u);
}

TEST(CollisionTest, SingleEntryExhaustive) {
  // With h = m = 1 every pair of nonzero scalars is related, so u = 0.
  const CollisionQuery q{FVector::from_digits("1"), FVector::from_digits("1"),
                      FVector::from_digits("1"), FVector::from_digits("0")};
  EXPECT_EQ(exact_collision_probability(q), Rational(1, 4));
  EXPECT_THROW(empirical_lemma2({FVector::from_digits("0"), FVector::from_digits("1"),
                                 FVector::from_digits("1"), FVector::from_digits("0")},
                                10, 1),
               DomainError);
}

TEST(ProjectionTest, Structure) {
  const EncodingScheme s = derandomize_projections(4, 2);
  ASSERT_EQ(s.ell(), 2);
  EXPECT_EQ(s.matrix(0), FMat::from_rows({FVector::from_digits("1000"), FVector::from_digits("0100")}));
  EXPECT_EQ(s.matrix(1), FMat::from_rows({FVector::from_digits("0010"), FVector::from_digits("0001")}));
  EXPECT_THROW(derandomize_projections(5, 2), DimensionError);
  EXPECT_FALSE((s.matrix(1) * FVector::unit(4, 3)).is_zero());
}

TEST(ProjectionTest, EveryNonzeroVectorSurvivesExhaustive) {
  const EncodingScheme s = derandomize_projections(6, 3);
  for (const FVector& v : all_vectors(6)) {
    if (v.is_zero()) continue;
    ASSERT_FALSE(encode_g(s, v).is_zero());
  }
}

// E[#zeros | prefix fixed] by enumerating every completion.
Rational oracle_expectation(const FVector& prefix, int fixed, const std::vector<FVector>& cs) {
  const int free = prefix.dim() - fixed;
  uint64_t zeros = 0, total = uint64_t{1} << (2 * free);
  for (uint64_t i = 0; i < total; ++i) {
    FVector a = prefix;
    for (int j = 0; j < free; ++j) a.set(fixed + j, Gf4::from_bits((i >> (2 * j)) & 3));
    for (const FVector& c : cs) zeros += dot(a, c).is_zero();
  }
  return Rational(zeros, total);
}

TEST(ConditionalExpectationTest, MatchesBruteForceGreedy) {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 2 + static_cast<int>(rng.below(3));
    std::vector<FVector> cs;
    const int n = 1 + static_cast<int>(rng.below(12));
    for (int i = 0; i < n; ++i) cs.push_back(rng.nonzero_vector(dim));
    FVector want = FVector::zero(dim);
    for (int j = 0; j < dim; ++j) {
      Rational best = -1;
      for (Gf4 x : kAllElements) {
        FVector cand = want;
        cand.set(j, x);
        const Rational e = oracle_expectation(cand, j + 1, cs);
        if (best < 0 || e < best) {
          best = e;
          want.set(j, x);
        }
      }
    }
    EXPECT_EQ(conditional_expectation_vector(cs), want);
  }
}

TEST(ConditionalExpectationTest, Examples) {
  const FVector a = conditional_expectation_vector({FVector::unit(3, 0)});
  EXPECT_NE(a[0], Gf4::zero());
  EXPECT_EQ(count_zero_products(a, {FVector::unit(3, 0)}), 0u);
  const std::vector<FVector> four(4, FVector::unit(3, 0));
  EXPECT_EQ(count_zero_products(conditional_expectation_vector(four), four), 0u);
  EXPECT_THROW(conditional_expectation_vector({FVector::zero(3)}), DomainError);
}

TEST(ConditionalExpectationTest, ThousandRandomNonzero) {
  Rng rng(13);
  std::vector<FVector> cs;
  for (int i = 0; i < 1000; ++i) cs.push_back(rng.nonzero_vector(6));
  EXPECT_LE(count_zero_products(conditional_expectation_vector(cs), cs), 250u);
}

TEST(DerandomizeTest, TinyInstancePassesExactly) {
  const std::vector<FVector> vs = {FVector::from_digits("1000"), FVector::from_digits("0110"),
                                   FVector::from_digits("1011")};
  const DerandomizedScheme d = derandomize_scheme(vs, FVector::from_digits("1111"), 1, 4);
  EXPECT_TRUE(check_scheme(d.scheme, vs, FVector::from_digits("1111")).all());
  EXPECT_TRUE(oracle_check(d.scheme, vs).all());
  EXPECT_EQ(d.scheme.ell(), d.projections + d.rounds);
  EXPECT_EQ(d.projections, 4);
  EXPECT_LE(d.rounds, ceil_log4(d.constraint_count));
}

TEST(DerandomizeTest, SingleVectorNeedsOnlyProjections) {
  const DerandomizedScheme d =
      derandomize_scheme({FVector::from_digits("101")}, FVector::from_digits("011"), 2, 3);
  EXPECT_EQ(d.rounds, 0);
  EXPECT_EQ(d.constraint_count, 0u);
  EXPECT_EQ(d.scheme.ell(), 2);
  EXPECT_EQ(d.scheme.provenance_token(), "derandomized");
}

TEST(DerandomizeTest, RandomTinyInstancesWithinRoundBound) {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int h = 1 + static_cast<int>(rng.below(2));
    const int m = 3 + static_cast<int>(rng.below(4));
    const auto vs = random_binary_set(rng, m, 2 + static_cast<int>(rng.below(5)));
    const FVector t = rng.binary_vector(m);
    const DerandomizedScheme d = derandomize_scheme(vs, t, h, m);
    EXPECT_TRUE(oracle_check(d.scheme, vs).all());
    EXPECT_LE(d.rounds, ceil_log4(d.constraint_count));
  }
}

TEST(IndexTest, RoundTripAndLexOrder) {
  EXPECT_EQ(vector_from_index(3, 0b011011), FVector::from_digits("123"));
  for (uint64_t i = 0; i + 1 < 64; ++i) {
    EXPECT_EQ(index_of_vector(vector_from_index(3, i)), i);
    EXPECT_LT(vector_from_index(3, i), vector_from_index(3, i + 1));
  }
  EXPECT_EQ(ceil_log4(1), 0);
  EXPECT_EQ(ceil_log4(4), 1);
  EXPECT_EQ(ceil_log4(5), 2);
}

}  // namespace
}  // namespace gapforge

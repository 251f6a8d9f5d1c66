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

#include <algorithm>
#include <map>
#include <unordered_set>
#include <utility>

#include "gapforge/errors.h"
#include "gapforge/rng.h"

namespace gapforge {

namespace {

uint64_t saturating_mul(uint64_t a, uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

uint64_t pow4(int e) {
  uint64_t p = 1;
  for (int i = 0; i < e; ++i) p = saturating_mul(p, 4);
  return p;
}

void check_positive(int h, int m, int ell) {
  if (h <= 0 || m <= 0 || ell <= 0) throw DimensionError("scheme parameters must be positive");
}

// f(alpha, .) applied to a precomputed g-image: output i is alpha . block_i.
FVector apply_alpha(const FVector& alpha, const FVector& g_image) {
  return block_linear(alpha, g_image);
}

std::vector<FVector> dedup(std::vector<FVector> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Scales a nonzero vector so its first nonzero entry is 1.
FVector normalize(const FVector& c) {
  for (int i = 0; i < c.dim(); ++i) {
    if (!c[i].is_zero()) return c[i].inverse() * c;
  }
  return c;
}

// alpha (x) d flattened row-major: entry r*m + c is alpha[r] d[c].
FVector outer(const FVector& alpha, const FVector& d) {
  const int h = alpha.dim(), m = d.dim();
  FVector out = FVector::zero(h * m);
  for (int r = 0; r < h; ++r) {
    if (alpha[r].is_zero()) continue;
    for (int c = 0; c < m; ++c) out.set(r * m + c, alpha[r] * d[c]);
  }
  return out;
}

}  // namespace

EncodingScheme::EncodingScheme(int h, int m, std::vector<FMat> mats, Provenance provenance,
                               uint64_t seed)
    : h_(h), m_(m), mats_(std::move(mats)), provenance_(provenance), seed_(seed) {
  check_positive(h, m, static_cast<int>(mats_.size()) > 0 ? 1 : 0);
  for (const FMat& a : mats_) {
    if (a.rows() != h || a.cols() != m) throw DimensionError("scheme matrix is not h x m");
  }
}

std::string EncodingScheme::provenance_token() const {
  if (provenance_ == Provenance::kDerandomized) return "derandomized";
  return "seeded-random(" + std::to_string(seed_) + ")";
}

EncodingScheme sample_scheme(uint64_t seed, int h, int m, int ell) {
  check_positive(h, m, ell);
  Rng rng(seed);
  std::vector<FMat> mats;
  mats.reserve(ell);
  for (int i = 0; i < ell; ++i) {
    FMat a(h, m);
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < m; ++c) a.set(r, c, rng.element());
    mats.push_back(std::move(a));
  }
  return EncodingScheme(h, m, std::move(mats), Provenance::kSeededRandom, seed);
}

FVector encode_g(const EncodingScheme& s, const FVector& v) {
  if (v.dim() != s.m()) throw DimensionError("encode_g: vector is not in F^m");
  const int h = s.h();
  FVector out = FVector::zero(s.ell() * h);
  for (int i = 0; i < s.ell(); ++i) {
    const FMat& a = s.matrix(i);
    for (int r = 0; r < h; ++r) out.set(i * h + r, dot(a.row(r), v));
  }
  return out;
}

FVector encode_f(const EncodingScheme& s, const FVector& alpha, const FVector& v) {
  if (alpha.dim() != s.h()) throw DimensionError("encode_f: alpha is not in F^h");
  if (v.dim() != s.m()) throw DimensionError("encode_f: vector is not in F^m");
  FVector out = FVector::zero(s.ell());
  for (int i = 0; i < s.ell(); ++i) {
    const FVector av = s.matrix(i) * v;
    out.set(i, dot(alpha, av));
  }
  return out;
}

std::optional<FVector> binary_kernel_vector(const EncodingScheme& s) {
  // Over GF(2) the packed words of g(e_j) are bit vectors and addition is
  // XOR; a dependency among them is a nonzero 0/1 vector in the kernel.
  struct Row {
    FVector image;
    std::vector<bool> combo;
    size_t pivot_word;
    uint64_t pivot_bit;
  };
  const int m = s.m();
  std::vector<Row> basis;
  for (int j = 0; j < m; ++j) {
    FVector cur = encode_g(s, FVector::unit(m, j));
    std::vector<bool> combo(m, false);
    combo[j] = true;
    for (const Row& b : basis) {
      if (cur.words()[b.pivot_word] & b.pivot_bit) {
        cur += b.image;
        for (int c = 0; c < m; ++c) combo[c] = combo[c] != b.combo[c];
      }
    }
    if (cur.is_zero()) {
      FVector v = FVector::zero(m);
      for (int c = 0; c < m; ++c)
        if (combo[c]) v.set(c, Gf4::one());
      return v;
    }
    const auto words = cur.words();
    size_t w = 0;
    while (words[w] == 0) ++w;
    basis.push_back(Row{cur, combo, w, words[w] & (~words[w] + 1)});
  }
  return std::nullopt;
}

SchemeReport check_scheme(const EncodingScheme& s, const std::vector<FVector>& vectors,
                          const FVector& target, uint64_t budget) {
  if (target.dim() != s.m()) throw DimensionError("check_scheme: target is not in F^m");
  const std::vector<FVector> vs = dedup(vectors);
  for (const FVector& v : vs) {
    if (v.dim() != s.m()) throw DimensionError("check_scheme: vector is not in F^m");
  }
  const uint64_t n = vs.size();
  const uint64_t alphas = pow4(s.h());
  if (saturating_mul(alphas, n * n) > budget ||
      saturating_mul(saturating_mul(alphas, alphas), n * n * n) > budget) {
    throw BudgetExceeded("check_scheme", "|F|^h |V|^2 or |F|^{2h} |V|^3 over budget");
  }

  SchemeReport report;
  if (auto kernel = binary_kernel_vector(s)) {
    report.cond_g_injective = false;
    report.counterexample =
        SchemeWitness{SchemeWitness::Condition::kInjective, {*kernel}, {}};
  }

  std::vector<FVector> g(n);
  for (size_t a = 0; a < n; ++a) g[a] = encode_g(s, vs[a]);
  std::vector<FVector> nonzero_alphas;
  for (uint64_t i = 1; i < alphas; ++i) nonzero_alphas.push_back(vector_from_index(s.h(), i));

  // f(alpha, v) = f(alpha, u)  <=>  f(alpha, v + u) = 0.
  for (size_t a = 0; a < n && report.cond_alpha; ++a) {
    for (size_t b = a + 1; b < n && report.cond_alpha; ++b) {
      const FVector diff = g[a] + g[b];
      for (const FVector& alpha : nonzero_alphas) {
        if (apply_alpha(alpha, diff).is_zero()) {
          report.cond_alpha = false;
          if (!report.counterexample) {
            report.counterexample =
                SchemeWitness{SchemeWitness::Condition::kAlpha, {vs[a], vs[b]}, {alpha}};
          }
          break;
        }
      }
    }
  }

  // For each w, the images {f(alpha, v + w) : alpha != 0} of two different
  // v, u must be disjoint.
  if (n >= 3) {
    // images[a][b] = sorted (f(alpha, v_a + v_b), alpha index).
    std::vector<std::vector<std::vector<std::pair<FVector, uint64_t>>>> images(
        n, std::vector<std::vector<std::pair<FVector, uint64_t>>>(n));
    for (size_t a = 0; a < n; ++a) {
      for (size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const FVector sum = g[a] + g[b];
        auto& list = images[a][b];
        list.reserve(nonzero_alphas.size());
        for (size_t i = 0; i < nonzero_alphas.size(); ++i) {
          list.emplace_back(apply_alpha(nonzero_alphas[i], sum), i);
        }
        std::sort(list.begin(), list.end());
      }
    }
    for (size_t w = 0; w < n && report.cond_selfcorr; ++w) {
      for (size_t v = 0; v < n && report.cond_selfcorr; ++v) {
        if (v == w) continue;
        for (size_t u = v + 1; u < n && report.cond_selfcorr; ++u) {
          if (u == w) continue;
          const auto& lv = images[v][w];
          const auto& lu = images[u][w];
          size_t i = 0, j = 0;
          while (i < lv.size() && j < lu.size()) {
            const auto ord = lv[i].first <=> lu[j].first;
            if (ord < 0) {
              ++i;
            } else if (ord > 0) {
              ++j;
            } else {
              report.cond_selfcorr = false;
              if (!report.counterexample) {
                report.counterexample = SchemeWitness{
                    SchemeWitness::Condition::kSelfCorrection,
                    {vs[v], vs[u], vs[w]},
                    {nonzero_alphas[lv[i].second], nonzero_alphas[lu[j].second]}};
              }
              break;
            }
          }
        }
      }
    }
  }
  return report;
}

FrequencyEstimate empirical_lemma2(const CollisionQuery& q, uint64_t samples, uint64_t seed,
                                   bool check_preconditions) {
  const int h = q.b.dim(), m = q.v.dim();
  if (q.c.dim() != h || q.u.dim() != m) throw DimensionError("collision query: inconsistent dimensions");
  if (check_preconditions) {
    if (q.b.is_zero() || q.c.is_zero()) throw DomainError("collision query: b and c must be nonzero");
    for (Gf4 a : {Gf4::one(), Gf4::omega(), Gf4::omega_plus_one()}) {
      if (q.v == a * q.u) throw DomainError("collision query: v is a nonzero multiple of u");
    }
  }
  Rng rng(seed);
  FrequencyEstimate est;
  est.samples = samples;
  FMat a(h, m);
  for (uint64_t s = 0; s < samples; ++s) {
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < m; ++c) a.set(r, c, rng.element());
    if (dot(q.b, a * q.v) == dot(q.c, a * q.u)) ++est.hits;
  }
  return est;
}

Rational exact_collision_probability(const CollisionQuery& q, uint64_t budget) {
  const int h = q.b.dim(), m = q.v.dim();
  if (q.c.dim() != h || q.u.dim() != m) throw DimensionError("collision query: inconsistent dimensions");
  const uint64_t total = pow4(h * m);
  if (h * m > 31 || total > budget) throw BudgetExceeded("exact_collision_probability", "4^{hm} matrices");
  uint64_t hits = 0;
  for (uint64_t idx = 0; idx < total; ++idx) {
    const FMat a = FMat::unflatten(h, m, vector_from_index(h * m, idx));
    if (dot(q.b, a * q.v) == dot(q.c, a * q.u)) ++hits;
  }
  return Rational(hits, total);
}

namespace {

std::vector<FMat> projection_matrices(int m, int h) {
  std::vector<FMat> mats;
  for (int start = 0; start < m; start += h) {
    FMat a(h, m);
    for (int r = 0; r < h && start + r < m; ++r) a.set(r, start + r, Gf4::one());
    mats.push_back(std::move(a));
  }
  return mats;
}

}  // namespace

EncodingScheme derandomize_projections(int m, int h) {
  if (h <= 0 || m <= 0) throw DimensionError("projection parameters must be positive");
  if (m % h != 0) {
    throw DimensionError("m = " + std::to_string(m) + " is not a multiple of h = " +
                         std::to_string(h));
  }
  return EncodingScheme(h, m, projection_matrices(m, h), Provenance::kDerandomized);
}

uint64_t count_zero_products(const FVector& a, const std::vector<FVector>& constraints) {
  uint64_t zeros = 0;
  for (const FVector& c : constraints)
    if (dot(a, c).is_zero()) ++zeros;
  return zeros;
}

FVector conditional_expectation_vector(const std::vector<FVector>& constraints) {
  if (constraints.empty()) throw DomainError("conditional expectation needs a constraint");
  const int dim = constraints.front().dim();
  // Constraint i is decided once its last nonzero coordinate is fixed; before
  // that its product with a uniform completion is uniform, so it contributes
  // exactly 1/4 regardless of earlier choices. Only the constraints whose
  // last nonzero coordinate is j react to the choice of A[j].
  std::vector<std::vector<size_t>> ending_at(dim);
  for (size_t i = 0; i < constraints.size(); ++i) {
    const FVector& c = constraints[i];
    if (c.dim() != dim) throw DimensionError("constraint vectors differ in dimension");
    int last = dim - 1;
    while (last >= 0 && c[last].is_zero()) --last;
    if (last < 0) throw DomainError("zero constraint vector: its product is always zero");
    ending_at[last].push_back(i);
  }
  FVector a = FVector::zero(dim);
  for (int j = 0; j < dim; ++j) {
    // zeros_if[x]: constraints ending at j that vanish when A[j] = x.
    uint64_t zeros_if[4] = {0, 0, 0, 0};
    for (size_t i : ending_at[j]) {
      const FVector& c = constraints[i];
      const Gf4 partial = dot(a, c);  // coordinates >= j of a are still zero
      ++zeros_if[(partial * c[j].inverse()).bits()];
    }
    unsigned best = 0;
    for (unsigned x = 1; x < 4; ++x)
      if (zeros_if[x] < zeros_if[best]) best = x;
    a.set(j, Gf4::from_bits(best));
  }
  return a;
}

int ceil_log4(uint64_t n) {
  int r = 0;
  uint64_t p = 1;
  while (p < n) {
    p = saturating_mul(p, 4);
    ++r;
  }
  return r;
}

DerandomizedScheme derandomize_scheme(const std::vector<FVector>& vectors, const FVector& target,
                                      int h, int m, uint64_t budget) {
  if (h <= 0 || m <= 0) throw DimensionError("derandomize: parameters must be positive");
  if (target.dim() != m) throw DimensionError("derandomize: target is not in F^m");
  const std::vector<FVector> vs = dedup(vectors);
  const uint64_t n = vs.size();
  const uint64_t alphas = pow4(h);
  if (saturating_mul(alphas, n * n) > budget ||
      saturating_mul(saturating_mul(alphas, alphas), n * n * n) > budget) {
    throw BudgetExceeded("derandomize_scheme", "|F|^h |V|^2 or |F|^{2h} |V|^3 over budget");
  }

  std::vector<FMat> mats = projection_matrices(m, h);
  DerandomizedScheme out{EncodingScheme(h, m, mats, Provenance::kDerandomized), 0, 0, 0, {}};
  out.projections = static_cast<int>(mats.size());
  if (n >= 2) {
    out.constraint_count = saturating_mul(n * (n - 1), alphas - 1);
    out.constraint_count += saturating_mul(saturating_mul(n * (n - 1) * (n - 2), alphas - 1),
                                           alphas - 1);
  }

  const EncodingScheme& proj = out.scheme;
  std::vector<FVector> g(n);
  for (size_t a = 0; a < n; ++a) g[a] = encode_g(proj, vs[a]);
  std::vector<FVector> nonzero_alphas;
  for (uint64_t i = 1; i < alphas; ++i) nonzero_alphas.push_back(vector_from_index(h, i));

  // Constraint vectors not yet satisfied by the projections, up to scalars.
  std::unordered_set<FVector> pending;
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      const FVector diff = g[a] + g[b];
      const FVector d = vs[a] + vs[b];
      for (const FVector& alpha : nonzero_alphas) {
        if (apply_alpha(alpha, diff).is_zero()) pending.insert(normalize(outer(alpha, d)));
      }
    }
  }
  for (size_t w = 0; w < n; ++w) {
    for (size_t v = 0; v < n; ++v) {
      if (v == w) continue;
      for (size_t u = 0; u < n; ++u) {
        if (u == w || u == v) continue;
        const FVector gv = g[v] + g[w], gu = g[u] + g[w];
        const FVector dv = vs[v] + vs[w], du = vs[u] + vs[w];
        for (const FVector& alpha : nonzero_alphas) {
          const FVector left = apply_alpha(alpha, gv);
          for (const FVector& alpha2 : nonzero_alphas) {
            if (left == apply_alpha(alpha2, gu)) {
              pending.insert(normalize(outer(alpha, dv) + outer(alpha2, du)));
            }
          }
        }
      }
    }
  }

  std::vector<FVector> residual(pending.begin(), pending.end());
  std::sort(residual.begin(), residual.end());
  while (!residual.empty()) {
    out.residual.push_back(residual.size());
    const FVector a = conditional_expectation_vector(residual);
    mats.push_back(FMat::unflatten(h, m, a));
    ++out.rounds;
    std::vector<FVector> next;
    for (FVector& c : residual)
      if (dot(a, c).is_zero()) next.push_back(std::move(c));
    residual = std::move(next);
  }
  out.scheme = EncodingScheme(h, m, std::move(mats), Provenance::kDerandomized);
  return out;
}

FVector vector_from_index(int dim, uint64_t index) {
  FVector v = FVector::zero(dim);
  for (int i = dim - 1; i >= 0; --i) {
    v.set(i, Gf4::from_bits(static_cast<unsigned>(index & 3u)));
    index >>= 2;
  }
  return v;
}

uint64_t index_of_vector(const FVector& v) {
  uint64_t idx = 0;
  for (int i = 0; i < v.dim(); ++i) idx = (idx << 2) | v[i].bits();
  return idx;
}

}  // namespace gapforge

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


#include "gapforge/csp.h"

#include <algorithm>
#include <map>
#include <string>

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

// Output j of the linear map is packed::dot(a, rows[j]) with rows in tuple
// layout (digit p at bits 2(kh-1-p)).
std::vector<uint64_t> linear_rows(const CspInstance& csp, const std::vector<FVector>& cs) {
  const int k = csp.k(), h = csp.h(), ell = csp.ell();
  if (static_cast<int>(cs.size()) != k) throw DimensionError("need one vector per set");
  std::vector<uint64_t> rows(ell, 0);
  for (int i = 0; i < k; ++i) {
    if (cs[i].dim() != h * ell) throw DimensionError("c_i must lie in F^{h ell}");
    for (int j = 0; j < ell; ++j)
      for (int r = 0; r < h; ++r) {
        const int p = i * h + r;
        rows[j] |= uint64_t{cs[i][j * h + r].bits()} << (2 * (k * h - 1 - p));
      }
  }
  return rows;
}

FVector eval_rows(const std::vector<uint64_t>& rows, Tuple a) {
  FVector v = FVector::zero(static_cast<int>(rows.size()));
  for (size_t j = 0; j < rows.size(); ++j) v.set(static_cast<int>(j), packed::dot(a, rows[j]));
  return v;
}

bool sum_matches(std::span<const uint64_t> target, std::span<const uint64_t> x,
                 std::span<const uint64_t> y) {
  for (size_t w = 0; w < target.size(); ++w)
    if (target[w] != (x[w] ^ y[w])) return false;
  return true;
}

FVector difference(const Assignment& x, Tuple a, Tuple b) { return x.get(a) + x.get(b); }

}  // namespace

CspInstance::CspInstance(VectorSumInstance inst, EncodingScheme scheme)
    : inst_(std::move(inst)),
      scheme_(std::move(scheme)),
      k_(inst_.num_sets()),
      h_(scheme_.h()),
      ell_(scheme_.ell()) {
  if (scheme_.m() != inst_.dim()) {
    throw DimensionError("scheme m = " + std::to_string(scheme_.m()) +
                         " does not match instance dimension " + std::to_string(inst_.dim()));
  }
  if (k_ * h_ > 31) throw DimensionError("k * h must be at most 31");
  const uint64_t na = num_alphas();
  allowed_.resize(k_ * na);
  target_code_.reserve(na);
  for (uint64_t al = 0; al < na; ++al) {
    const FVector alpha = vector_from_index(h_, al);
    target_code_.push_back(encode_f(scheme_, alpha, inst_.target()));
    for (int i = 0; i < k_; ++i) {
      auto& list = allowed_[i * na + al];
      for (const FVector& v : inst_.set(i)) list.push_back(encode_f(scheme_, alpha, v));
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }
}

Tuple CspInstance::replicate(uint64_t alpha) const {
  Tuple t = 0;
  for (int i = 0; i < k_; ++i) t = (t << (2 * h_)) | alpha;
  return t;
}

bool CspInstance::is_allowed(int i, uint64_t alpha, const FVector& diff) const {
  const auto& list = allowed(i, alpha);
  return std::binary_search(list.begin(), list.end(), diff);
}

BigInt CspInstance::c1_count() const { return big_pow(4, 2 * k_ * h_); }
BigInt CspInstance::c2_count_per_i() const { return big_pow(4, (k_ + 1) * h_); }
BigInt CspInstance::c3_count() const { return big_pow(4, (k_ + 1) * h_); }

Assignment::Assignment(uint64_t num_tuples, int ell)
    : n_(num_tuples), ell_(ell), w_(packed::words_for(ell)) {
  if (ell <= 0) throw DimensionError("value dimension must be positive");
  data_.assign(n_ * w_, 0);
}

void Assignment::set(Tuple a, const FVector& v) {
  if (v.dim() != ell_) throw DimensionError("assignment value is not in F^ell");
  std::copy(v.words().begin(), v.words().end(), data_.begin() + a * w_);
}

Assignment linear_assignment(const CspInstance& csp, const std::vector<FVector>& cs) {
  const auto rows = linear_rows(csp, cs);
  Assignment x(csp.num_tuples(), csp.ell());
  for (Tuple a = 0; a < csp.num_tuples(); ++a) x.set(a, eval_rows(rows, a));
  return x;
}

Assignment honest_assignment(const CspInstance& csp, const SelectionCertificate& sel) {
  const VectorSumInstance& inst = csp.instance();
  if (static_cast<int>(sel.index.size()) != inst.num_sets()) {
    throw DimensionError("selection must pick exactly one member per set");
  }
  std::vector<FVector> cs;
  for (int i = 0; i < inst.num_sets(); ++i) {
    const int idx = sel.index[i];
    if (idx < 0 || idx >= static_cast<int>(inst.set(i).size())) {
      throw DimensionError("selection index out of range for set " + std::to_string(i));
    }
    // f(alpha, v) = F(alpha, g(v)).
    cs.push_back(encode_g(csp.scheme(), inst.set(i)[idx]));
  }
  return linear_assignment(csp, cs);
}

bool c1_satisfied(const CspInstance&, const Assignment& x, Tuple a, Tuple b) {
  return sum_matches(x.raw(a ^ b), x.raw(a), x.raw(b));
}

bool c2_satisfied(const CspInstance& csp, const Assignment& x, int i, Tuple a, uint64_t alpha) {
  return csp.is_allowed(i, alpha, difference(x, csp.shift_component(a, i, alpha), a));
}

bool c3_satisfied(const CspInstance& csp, const Assignment& x, Tuple a, uint64_t alpha) {
  return difference(x, csp.shift_all(a, alpha), a) == csp.target_code(alpha);
}

bool SatReport::all_satisfied() const {
  if (c1_fraction != 1 || c3_fraction != 1) return false;
  return std::all_of(c2_fraction_per_i.begin(), c2_fraction_per_i.end(),
                     [](const Rational& q) { return q == 1; });
}

SatReport evaluate(const CspInstance& csp, const Assignment& x, const EvalMode& mode) {
  if (x.num_tuples() != csp.num_tuples() || x.ell() != csp.ell()) {
    throw DimensionError("assignment shape does not match the CSP");
  }
  const int k = csp.k();
  const uint64_t n = csp.num_tuples(), na = csp.num_alphas();
  SatReport rep;
  rep.c2_fraction_per_i.resize(k);

  if (!mode.exhaustive) {
    if (mode.samples == 0) throw DomainError("sampled evaluation needs at least one sample");
    rep.exact = false;
    rep.samples = mode.samples;
    rep.seed = mode.seed;
    Rng rng(mode.seed);
    uint64_t hits = 0;
    for (uint64_t s = 0; s < mode.samples; ++s) {
      const Tuple a = rng.below(n), b = rng.below(n);
      hits += c1_satisfied(csp, x, a, b);
    }
    rep.c1_fraction = Rational(hits, mode.samples);
    for (int i = 0; i < k; ++i) {
      hits = 0;
      for (uint64_t s = 0; s < mode.samples; ++s) {
        const Tuple a = rng.below(n);
        hits += c2_satisfied(csp, x, i, a, rng.below(na));
      }
      rep.c2_fraction_per_i[i] = Rational(hits, mode.samples);
    }
    hits = 0;
    for (uint64_t s = 0; s < mode.samples; ++s) {
      const Tuple a = rng.below(n);
      hits += c3_satisfied(csp, x, a, rng.below(na));
    }
    rep.c3_fraction = Rational(hits, mode.samples);
    return rep;
  }

  const uint64_t work = std::max(saturating_mul(n, n), saturating_mul(saturating_mul(n, na), k));
  if (work > mode.budget) {
    throw BudgetExceeded("evaluate", "exhaustive evaluation needs " + std::to_string(work) +
                                         " constraint checks");
  }
  uint64_t c1 = 0;
  for (Tuple a = 0; a < n; ++a)
    for (Tuple b = 0; b < n; ++b) c1 += c1_satisfied(csp, x, a, b);
  rep.c1_fraction = Rational(c1, n * n);

  rep.c2_fraction_per_i_alpha.assign(k, std::vector<Rational>(na));
  rep.c3_fraction_per_alpha.assign(na, Rational());
  for (int i = 0; i < k; ++i) {
    uint64_t total = 0;
    for (uint64_t al = 0; al < na; ++al) {
      uint64_t hits = 0;
      for (Tuple a = 0; a < n; ++a) hits += c2_satisfied(csp, x, i, a, al);
      total += hits;
      if (al != 0) rep.c2_fraction_per_i_alpha[i][al] = Rational(hits, n);
    }
    rep.c2_fraction_per_i[i] = Rational(total, n * na);
  }
  uint64_t total = 0;
  for (uint64_t al = 0; al < na; ++al) {
    uint64_t hits = 0;
    for (Tuple a = 0; a < n; ++a) hits += c3_satisfied(csp, x, a, al);
    total += hits;
    if (al != 0) rep.c3_fraction_per_alpha[al] = Rational(hits, n);
  }
  rep.c3_fraction = Rational(total, n * na);
  return rep;
}

Decoding linearity_decode(const CspInstance& csp, const Assignment& x, uint64_t budget) {
  const int k = csp.k(), h = csp.h(), ell = csp.ell();
  const int dims = k * h * ell;
  const uint64_t n = csp.num_tuples();
  const uint64_t candidates = pow4(dims);
  if (dims > 31 || saturating_mul(candidates, n) > budget) {
    throw BudgetExceeded("linearity_decode", "4^{kh ell} candidates over 4^{kh} tuples");
  }
  std::vector<FVector> values(n);
  for (Tuple a = 0; a < n; ++a) values[a] = x.get(a);

  auto split = [&](uint64_t idx) {
    const FVector flat = vector_from_index(dims, idx);
    std::vector<FVector> cs;
    for (int i = 0; i < k; ++i) cs.push_back(flat.slice(i * h * ell, h * ell));
    return cs;
  };

  uint64_t best = 0, best_idx = 0;
  for (uint64_t idx = 0; idx < candidates; ++idx) {
    const auto rows = linear_rows(csp, split(idx));
    uint64_t agree = 0;
    for (Tuple a = 0; a < n; ++a) {
      bool ok = true;
      for (int j = 0; j < ell && ok; ++j) ok = packed::dot(a, rows[j]) == values[a][j];
      agree += ok;
    }
    if (agree > best || idx == 0) {
      best = agree;
      best_idx = idx;
    }
  }
  return Decoding{split(best_idx), Rational(best, n), true};
}

Decoding linearity_decode_sampled(const CspInstance& csp, const Assignment& x, uint64_t samples,
                                  uint64_t seed) {
  if (samples == 0) throw DomainError("sampled decoding needs at least one sample");
  const int k = csp.k(), h = csp.h(), ell = csp.ell();
  const uint64_t n = csp.num_tuples();
  Rng rng(seed);
  std::vector<FVector> cs(k, FVector::zero(h * ell));
  for (int i = 0; i < k; ++i) {
    for (int r = 0; r < h; ++r) {
      const Tuple u = Tuple{1} << (2 * (k * h - 1 - (i * h + r)));
      // x(u) ~ plurality of x(u + y) - x(y); ties go to the smaller value.
      std::map<FVector, uint64_t> votes;
      for (uint64_t s = 0; s < samples; ++s) {
        const Tuple y = rng.below(n);
        ++votes[difference(x, u ^ y, y)];
      }
      auto best = votes.begin();
      for (auto it = votes.begin(); it != votes.end(); ++it)
        if (it->second > best->second) best = it;
      for (int j = 0; j < ell; ++j) cs[i].set(j * h + r, best->first[j]);
    }
  }
  const auto rows = linear_rows(csp, cs);
  uint64_t agree = 0;
  for (uint64_t s = 0; s < samples; ++s) {
    const Tuple a = rng.below(n);
    agree += eval_rows(rows, a) == x.get(a);
  }
  return Decoding{cs, Rational(agree, samples), false};
}

Rational agreement(const Assignment& x, const Assignment& y) {
  if (x.num_tuples() != y.num_tuples() || x.ell() != y.ell()) {
    throw DimensionError("assignments differ in shape");
  }
  uint64_t same = 0;
  for (Tuple a = 0; a < x.num_tuples(); ++a) {
    const auto p = x.raw(a), q = y.raw(a);
    same += std::equal(p.begin(), p.end(), q.begin());
  }
  return Rational(same, x.num_tuples());
}

}  // namespace gapforge

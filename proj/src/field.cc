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

#include "gapforge/field.h"

#include <bit>
#include <string>
#include <utility>

#include "gapforge/errors.h"

namespace gapforge {

Gf4 Gf4::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in GF(4)");
  // The multiplicative group has order 3, so e^{-1} = e^2.
  return *this * *this;
}

std::string Gf4::name() const {
  static constexpr const char* kNames[] = {"0", "1", "w", "w+1"};
  return kNames[v_];
}

FVector::FVector(int dim) : dim_(dim) {
  if (dim <= 0) throw DimensionError("vector dimension must be positive, got " + std::to_string(dim));
  words_.assign(packed::words_for(dim), 0);
}

FVector FVector::zero(int dim) { return FVector(dim); }

FVector FVector::ones(int dim) {
  FVector v(dim);
  for (int i = 0; i < dim; ++i) v.set(i, Gf4::one());
  return v;
}

FVector FVector::unit(int dim, int i) {
  FVector v(dim);
  if (i < 0 || i >= dim) throw DimensionError("unit vector index out of range");
  v.set(i, Gf4::one());
  return v;
}

FVector FVector::from_elements(const std::vector<Gf4>& elems) {
  FVector v(static_cast<int>(elems.size()));
  for (int i = 0; i < v.dim_; ++i) v.set(i, elems[i]);
  return v;
}

FVector FVector::from_digits(std::string_view digits) {
  FVector v(static_cast<int>(digits.size()));
  for (int i = 0; i < v.dim_; ++i) {
    const char c = digits[i];
    if (c < '0' || c > '3') throw DomainError(std::string("invalid field digit '") + c + "'");
    v.set(i, Gf4::from_bits(static_cast<unsigned>(c - '0')));
  }
  return v;
}

FVector FVector::from_binary_mask(int dim, uint64_t mask) {
  FVector v(dim);
  for (int i = 0; i < dim && i < 64; ++i) {
    if ((mask >> i) & 1u) v.set(i, Gf4::one());
  }
  return v;
}

FVector FVector::from_words(int dim, std::span<const uint64_t> words) {
  FVector v(dim);
  if (words.size() != v.words_.size()) throw DimensionError("word count does not match dimension");
  std::copy(words.begin(), words.end(), v.words_.begin());
  if (const int tail = dim % packed::kPerWord; tail != 0) {
    v.words_.back() &= (uint64_t{1} << (2 * tail)) - 1;
  }
  return v;
}

void FVector::set(int i, Gf4 e) {
  uint64_t& w = words_[i / 32];
  const int shift = 2 * (i % 32);
  w = (w & ~(uint64_t{3} << shift)) | (uint64_t{e.bits()} << shift);
}

bool FVector::is_zero() const {
  for (uint64_t w : words_)
    if (w != 0) return false;
  return true;
}

bool FVector::is_binary() const {
  for (uint64_t w : words_)
    if ((w >> 1) & packed::kLowBits) return false;
  return true;
}

int FVector::weight() const {
  int n = 0;
  for (uint64_t w : words_) n += std::popcount((w | (w >> 1)) & packed::kLowBits);
  return n;
}

void FVector::check_same_dim(const FVector& o, const char* op) const {
  if (dim_ != o.dim_) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(dim_) +
                         " vs " + std::to_string(o.dim_) + ")");
  }
}

FVector& FVector::operator+=(const FVector& o) {
  check_same_dim(o, "add");
  for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

FVector operator*(Gf4 c, const FVector& v) {
  FVector out = v;
  for (uint64_t& w : out.words_) w = packed::scale(w, c);
  return out;
}

FVector FVector::slice(int begin, int len) const {
  if (begin < 0 || len <= 0 || begin + len > dim_) throw DimensionError("slice out of range");
  FVector out(len);
  for (int i = 0; i < len; ++i) out.set(i, (*this)[begin + i]);
  return out;
}

FVector concat(const FVector& a, const FVector& b) {
  FVector out(a.dim_ + b.dim_);
  for (int i = 0; i < a.dim_; ++i) out.set(i, a[i]);
  for (int i = 0; i < b.dim_; ++i) out.set(a.dim_ + i, b[i]);
  return out;
}

std::string FVector::digits() const {
  std::string s(dim_, '0');
  for (int i = 0; i < dim_; ++i) s[i] = static_cast<char>('0' + (*this)[i].bits());
  return s;
}

std::strong_ordering operator<=>(const FVector& a, const FVector& b) {
  if (a.dim_ != b.dim_) return a.dim_ <=> b.dim_;
  for (size_t i = 0; i < a.words_.size(); ++i) {
    const uint64_t diff = a.words_[i] ^ b.words_[i];
    if (diff == 0) continue;
    const int lane = std::countr_zero(diff) / 2;
    const unsigned ea = static_cast<unsigned>(a.words_[i] >> (2 * lane)) & 3u;
    const unsigned eb = static_cast<unsigned>(b.words_[i] >> (2 * lane)) & 3u;
    return ea <=> eb;
  }
  return std::strong_ordering::equal;
}

size_t FVector::hash() const {
  uint64_t h = 0x84222325cbf29ce4ULL ^ static_cast<uint64_t>(dim_);
  for (uint64_t w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<size_t>(h);
}

Gf4 dot(const FVector& x, const FVector& y) {
  if (x.dim() != y.dim()) throw DimensionError("dot: dimension mismatch");
  Gf4 acc;
  const auto xw = x.words(), yw = y.words();
  for (size_t i = 0; i < xw.size(); ++i) acc += packed::dot(xw[i], yw[i]);
  return acc;
}

FVector block_linear(const FVector& a, const FVector& v) {
  const int d = a.dim();
  if (v.dim() % d != 0) {
    throw DimensionError("block_linear: " + std::to_string(v.dim()) + " is not a multiple of " +
                         std::to_string(d));
  }
  const int n = v.dim() / d;
  FVector out = FVector::zero(n);
  for (int j = 0; j < n; ++j) {
    Gf4 acc;
    for (int i = 0; i < d; ++i) acc += a[i] * v[j * d + i];
    out.set(j, acc);
  }
  return out;
}

Rational dist(const FVector& x, const FVector& y) {
  if (x.dim() != y.dim()) throw DimensionError("dist: dimension mismatch");
  return Rational((x - y).weight(), x.dim());
}

FMat::FMat(int rows, int cols) : cols_(cols) {
  if (rows <= 0 || cols <= 0) throw DimensionError("matrix dimensions must be positive");
  rows_.assign(rows, FVector::zero(cols));
}

FMat FMat::from_rows(std::vector<FVector> rows) {
  if (rows.empty()) throw DimensionError("matrix needs at least one row");
  FMat m;
  m.cols_ = rows.front().dim();
  for (const FVector& r : rows) {
    if (r.dim() != m.cols_) throw DimensionError("ragged matrix rows");
  }
  m.rows_ = std::move(rows);
  return m;
}

FMat FMat::unflatten(int rows, int cols, const FVector& flat) {
  if (flat.dim() != rows * cols) throw DimensionError("unflatten: size mismatch");
  FMat m(rows, cols);
  for (int r = 0; r < rows; ++r) m.rows_[r] = flat.slice(r * cols, cols);
  return m;
}

FVector FMat::operator*(const FVector& v) const {
  if (v.dim() != cols_) throw DimensionError("matrix-vector product: dimension mismatch");
  FVector out = FVector::zero(rows());
  for (int r = 0; r < rows(); ++r) out.set(r, dot(rows_[r], v));
  return out;
}

FVector FMat::flatten() const {
  FVector out = rows_.front();
  for (int r = 1; r < rows(); ++r) out = concat(out, rows_[r]);
  return out;
}

bool FMat::is_zero() const {
  for (const FVector& r : rows_)
    if (!r.is_zero()) return false;
  return true;
}

}  // namespace gapforge

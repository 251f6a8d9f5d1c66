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

#ifndef GAPFORGE_FIELD_H_
#define GAPFORGE_FIELD_H_

// Arithmetic over GF(4) = GF(2)[x]/(x^2 + x + 1), bit-packed vectors and
// small dense matrices over it.
//
// An element a + b*x is stored as the bit pair (b, a), i.e. the integer
// 2b + a. The four elements in canonical order are 0, 1, w (= x) and w+1,
// with digits 0, 1, 2, 3. Addition is XOR of the pairs.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gapforge/rational.h"

namespace gapforge {

namespace detail {

// Polynomial product of two residues mod x^2 + x + 1 over GF(2). Used at
// compile time to generate the multiplication table.
constexpr unsigned poly_mul_mod(unsigned p, unsigned q) {
  unsigned prod = 0;
  for (int i = 0; i < 2; ++i) {
    if (q & (1u << i)) prod ^= p << i;
  }
  if (prod & 4u) prod ^= 0b111u;  // x^2 = x + 1
  return prod;
}

constexpr std::array<std::array<uint8_t, 4>, 4> make_mul_table() {
  std::array<std::array<uint8_t, 4>, 4> t{};
  for (unsigned a = 0; a < 4; ++a)
    for (unsigned b = 0; b < 4; ++b) t[a][b] = static_cast<uint8_t>(poly_mul_mod(a, b));
  return t;
}

inline constexpr auto kMulTable = make_mul_table();

}  // namespace detail

class Gf4 {
 public:
  constexpr Gf4() = default;

  // bits in [0, 4): the digit of the element.
  static constexpr Gf4 from_bits(unsigned bits) { return Gf4(static_cast<uint8_t>(bits & 3u)); }
  static constexpr Gf4 zero() { return Gf4(0); }
  static constexpr Gf4 one() { return Gf4(1); }
  static constexpr Gf4 omega() { return Gf4(2); }
  static constexpr Gf4 omega_plus_one() { return Gf4(3); }

  constexpr unsigned bits() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }

  friend constexpr Gf4 operator+(Gf4 a, Gf4 b) { return Gf4(a.v_ ^ b.v_); }
  // Characteristic 2: subtraction is addition.
  friend constexpr Gf4 operator-(Gf4 a, Gf4 b) { return a + b; }
  friend constexpr Gf4 operator*(Gf4 a, Gf4 b) { return Gf4(detail::kMulTable[a.v_][b.v_]); }
  Gf4& operator+=(Gf4 o) { return *this = *this + o; }
  Gf4& operator*=(Gf4 o) { return *this = *this * o; }

  // Throws DomainError for zero.
  Gf4 inverse() const;

  friend constexpr auto operator<=>(Gf4, Gf4) = default;

  // "0", "1", "w", "w+1".
  std::string name() const;

 private:
  constexpr explicit Gf4(uint8_t v) : v_(v) {}
  uint8_t v_ = 0;
};

inline constexpr std::array<Gf4, 4> kAllElements = {Gf4::zero(), Gf4::one(), Gf4::omega(),
                                                    Gf4::omega_plus_one()};

inline Gf4 add(Gf4 a, Gf4 b) { return a + b; }
inline Gf4 mul(Gf4 a, Gf4 b) { return a * b; }
inline Gf4 inv(Gf4 a) { return a.inverse(); }

// Word-level kernels on the packed layout: 32 elements per 64-bit word,
// element j of a word in bits [2j, 2j+2).
namespace packed {

inline constexpr uint64_t kLowBits = 0x5555555555555555ULL;
inline constexpr int kPerWord = 32;

inline int words_for(int dim) { return (dim + kPerWord - 1) / kPerWord; }

// Multiplies all 32 lanes by a scalar.
inline uint64_t scale(uint64_t w, Gf4 c) {
  const uint64_t a = w & kLowBits;
  const uint64_t b = (w >> 1) & kLowBits;
  switch (c.bits()) {
    case 0: return 0;
    case 1: return w;
    case 2: return b | ((a ^ b) << 1);   // (a + bx)x = b + (a+b)x
    default: return (a ^ b) | (a << 1);  // (a + bx)(1+x) = (a+b) + ax
  }
}

// Sum over lanes of the lane-wise products.
inline Gf4 dot(uint64_t x, uint64_t y) {
  const uint64_t xa = x & kLowBits, xb = (x >> 1) & kLowBits;
  const uint64_t ya = y & kLowBits, yb = (y >> 1) & kLowBits;
  const uint64_t lo = (xa & ya) ^ (xb & yb);
  const uint64_t hi = (xa & yb) ^ (xb & ya) ^ (xb & yb);
  const unsigned bits = static_cast<unsigned>(__builtin_popcountll(lo) & 1) |
                        (static_cast<unsigned>(__builtin_popcountll(hi) & 1) << 1);
  return Gf4::from_bits(bits);
}

}  // namespace packed

// A vector in F^dim, dim > 0, packed two bits per element.
class FVector {
 public:
  FVector() = default;

  static FVector zero(int dim);
  static FVector ones(int dim);
  // e_i, 0-based index.
  static FVector unit(int dim, int i);
  static FVector from_elements(const std::vector<Gf4>& elems);
  // Digits 0-3, one per element; other characters are a DomainError.
  static FVector from_digits(std::string_view digits);
  // The GF(2) vector with bit i of `mask` at coordinate i, embedded in F^dim.
  static FVector from_binary_mask(int dim, uint64_t mask);
  static FVector from_words(int dim, std::span<const uint64_t> words);

  int dim() const { return dim_; }
  Gf4 operator[](int i) const {
    return Gf4::from_bits(static_cast<unsigned>(words_[i / 32] >> (2 * (i % 32))) & 3u);
  }
  void set(int i, Gf4 e);

  bool is_zero() const;
  // All entries in {0, 1}.
  bool is_binary() const;
  int weight() const;

  FVector& operator+=(const FVector& o);
  FVector& operator-=(const FVector& o) { return *this += o; }
  friend FVector operator+(FVector a, const FVector& b) { return a += b; }
  friend FVector operator-(FVector a, const FVector& b) { return a += b; }
  friend FVector operator*(Gf4 c, const FVector& v);

  // Elements [begin, begin + len).
  FVector slice(int begin, int len) const;
  friend FVector concat(const FVector& a, const FVector& b);

  std::span<const uint64_t> words() const { return words_; }
  std::string digits() const;

  friend bool operator==(const FVector& a, const FVector& b) {
    return a.dim_ == b.dim_ && a.words_ == b.words_;
  }
  // Lexicographic by element in canonical order; shorter vectors first.
  friend std::strong_ordering operator<=>(const FVector& a, const FVector& b);

  size_t hash() const;

 private:
  explicit FVector(int dim);
  void check_same_dim(const FVector& o, const char* op) const;

  int dim_ = 0;
  std::vector<uint64_t> words_;
};

// sum_i x[i] * y[i].
Gf4 dot(const FVector& x, const FVector& y);

// For a in F^d and v in F^{d n}: output j is sum_i a[i] * v[j d + i].
// Linear in a for fixed v and in v for fixed a.
FVector block_linear(const FVector& a, const FVector& v);

// Fraction of coordinates where x and y differ.
Rational dist(const FVector& x, const FVector& y);
inline Rational dist(const FVector& x) { return dist(x, FVector::zero(x.dim())); }

// Row-major h x m matrix, h, m > 0.
class FMat {
 public:
  FMat() = default;
  FMat(int rows, int cols);
  static FMat from_rows(std::vector<FVector> rows);
  // Row-major reshaping of a rows*cols vector.
  static FMat unflatten(int rows, int cols, const FVector& flat);

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  const FVector& row(int r) const { return rows_[r]; }
  Gf4 at(int r, int c) const { return rows_[r][c]; }
  void set(int r, int c, Gf4 e) { rows_[r].set(c, e); }

  FVector operator*(const FVector& v) const;
  FVector flatten() const;
  bool is_zero() const;

  friend bool operator==(const FMat&, const FMat&) = default;

 private:
  int cols_ = 0;
  std::vector<FVector> rows_;
};

}  // namespace gapforge

template <>
struct std::hash<gapforge::FVector> {
  size_t operator()(const gapforge::FVector& v) const { return v.hash(); }
};

#endif  // GAPFORGE_FIELD_H_

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

#ifndef GAPFORGE_RATIONAL_H_
#define GAPFORGE_RATIONAL_H_

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gapforge {

// Exact arbitrary-precision integers and rationals. Every satisfaction
// fraction, distance and size formula in the library is reported in these.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

// "num/den" in lowest terms ("1" when the denominator is one).
inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) {
  return static_cast<double>(q);
}

// Exact b^e.
inline BigInt big_pow(uint64_t base, uint64_t exponent) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

}  // namespace gapforge

#endif  // GAPFORGE_RATIONAL_H_

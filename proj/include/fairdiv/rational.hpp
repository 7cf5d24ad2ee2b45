// Copyright 2026 The fairdiv Authors
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

#ifndef FAIRDIV_RATIONAL_HPP_
#define FAIRDIV_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace fairdiv {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational arithmetic. Values are kept in lowest terms with a positive
// denominator; no solver in this library ever touches floating point, so all
// envy comparisons and termination arguments hold exactly.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ratNum(const Rational& q) { return numerator(q); }
inline BigInt ratDen(const Rational& q) { return denominator(q); }

inline bool isIntegral(const Rational& q) { return denominator(q) == 1; }

// floor(q) as a big integer; exact for negatives too.
inline BigInt ratFloor(const Rational& q) {
  BigInt n = numerator(q);
  BigInt d = denominator(q);
  BigInt t = n / d;
  if (n < 0 && t * d != n) --t;
  return t;
}

inline BigInt ratCeil(const Rational& q) { return -ratFloor(-q); }

// Nearest integer, with exact halves mapped towards +infinity.
inline BigInt roundHalfUp(const Rational& q) {
  return ratFloor(q + Rational(1, 2));
}

inline int toInt(const BigInt& n) {
  if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max())
    throw std::out_of_range("integer out of int range: " + n.str());
  return static_cast<int>(n);
}

inline Rational ratAbs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Canonical text form: "p" when integral, "p/q" otherwise.
inline std::string toString(const Rational& q) {
  if (isIntegral(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

namespace detail {

inline BigInt parseDigits(const std::string& text, size_t lo, size_t hi,
                          const std::string& whole) {
  if (lo >= hi) throw std::invalid_argument("empty digit run in '" + whole + "'");
  for (size_t i = lo; i < hi; ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("bad rational literal '" + whole + "'");
  }
  return BigInt(text.substr(lo, hi - lo));
}

}  // namespace detail

// Parses the accepted rational spellings exactly:
//   "3"  "-12"  "7/2"  "0.25"  "-1.5"  ".125"  "2."
// Fractions must have a positive integer denominator; the sign, if any, leads.
inline Rational parseRational(const std::string& text) {
  size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos >= text.size())
    throw std::invalid_argument("bad rational literal '" + text + "'");

  size_t slash = text.find('/', pos);
  size_t dot = text.find('.', pos);
  Rational value;
  if (slash != std::string::npos) {
    if (dot != std::string::npos)
      throw std::invalid_argument("bad rational literal '" + text + "'");
    BigInt num = detail::parseDigits(text, pos, slash, text);
    BigInt den = detail::parseDigits(text, slash + 1, text.size(), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    value = Rational(num, den);
  } else if (dot != std::string::npos) {
    BigInt whole = 0;
    if (dot > pos) whole = detail::parseDigits(text, pos, dot, text);
    BigInt frac = 0;
    BigInt scale = 1;
    if (dot + 1 < text.size()) {
      frac = detail::parseDigits(text, dot + 1, text.size(), text);
      for (size_t i = dot + 1; i < text.size(); ++i) scale *= 10;
    } else if (dot == pos) {
      // "." with no digits on either side.
      throw std::invalid_argument("bad rational literal '" + text + "'");
    }
    value = Rational(whole * scale + frac, scale);
  } else {
    value = Rational(detail::parseDigits(text, pos, text.size(), text));
  }
  return negative ? Rational(-value) : value;
}

}  // namespace fairdiv

#endif  // FAIRDIV_RATIONAL_HPP_

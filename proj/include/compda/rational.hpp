// Copyright 2026 The compda Authors
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

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <charconv>
#include <cstdint>
#include <string>

#include "compda/errors.hpp"

namespace compda {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Binomial coefficient with C(n,k) = 0 outside 0 <= k <= n.
inline BigInt binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

inline Rational make_rational(const BigInt& num, const BigInt& den = 1) {
  if (den == 0) throw RangeError("rational with zero denominator");
  return Rational(num, den);
}

inline bool is_integer(const Rational& x) {
  return boost::multiprecision::denominator(x) == 1;
}

inline BigInt floor_of(const Rational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

// Lowest terms, "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& x) {
  const BigInt& den = boost::multiprecision::denominator(x);
  if (den == 1) return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

// 15 significant digits, locale independent.
inline std::string to_decimal(const Rational& x) {
  const double value = x.convert_to<double>();
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 15);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

// Parses "p", "p/q" (optionally negative). Throws RangeError.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw RangeError("bad rational '" + text + "'");
    std::size_t start = (s[0] == '-') ? 1 : 0;
    if (start == s.size()) throw RangeError("bad rational '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw RangeError("bad rational '" + text + "'");
    return BigInt(s);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  return make_rational(parse_int(text.substr(0, slash)),
                       parse_int(text.substr(slash + 1)));
}

}  // namespace compda

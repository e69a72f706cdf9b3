#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "dbox/error.hpp"

namespace dbox {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" in lowest terms, or "p" when q == 1.
inline std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

namespace detail {
inline BigInt parse_integer(std::string_view s, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    negative = s[pos] == '-';
    ++pos;
  }
  if (pos == s.size()) throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
  BigInt v = 0;
  for (; pos < s.size(); ++pos) {
    if (s[pos] < '0' || s[pos] > '9') {
      throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
    }
    v = v * 10 + (s[pos] - '0');
  }
  return negative ? BigInt(-v) : v;
}
}  // namespace detail

/// Parses "p/q" or "p"; the result is reduced.
inline Rational parse_rational(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(s, s));
  const BigInt num = detail::parse_integer(s.substr(0, slash), s);
  const BigInt den = detail::parse_integer(s.substr(slash + 1), s);
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(s) + "'");
  return Rational(num, den);
}

/// Representative of r modulo m in [0, m).
inline Rational mod_floor(const Rational& r, const BigInt& m) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const BigInt period = m * den;
  BigInt rem = num % period;
  if (rem < 0) rem += period;
  return Rational(rem, den);
}

}  // namespace dbox

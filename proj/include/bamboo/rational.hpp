#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bamboo {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses an exact rational from text. Accepted forms: integers ("12"),
/// decimals with an optional exponent ("0.1", "2.5e-3") and fractions
/// ("96/7"). Throws Error(parse) on anything else.
Rational parse_rational(std::string_view text);

/// Canonical rendering: "p/q" in lowest terms, or the bare integer when q = 1.
std::string to_string(const Rational& value);

/// Fixed-point rendering rounded half-up, for human-readable tables only.
std::string to_decimal(const Rational& value, int digits);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

/// Narrowing with a range check; throws Error(overflow).
std::int64_t to_int64(const Integer& value);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(Integer(num), Integer(den));
}

}  // namespace bamboo

#include "bamboo/rational.hpp"

#include <cctype>
#include <limits>

#include "bamboo/error.hpp"

namespace bamboo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_instance: return "InvalidInstance";
    case ErrorKind::period_below_two: return "PeriodBelowTwo";
    case ErrorKind::unroundable_period: return "UnroundablePeriod";
    case ErrorKind::certificate_violation: return "CertificateViolation";
    case ErrorKind::not_a_chain: return "NotAChain";
    case ErrorKind::overdense: return "Overdense";
    case ErrorKind::job_mismatch: return "JobMismatch";
    case ErrorKind::horizon_overflow: return "HorizonOverflow";
    case ErrorKind::state_space_too_large: return "StateSpaceTooLarge";
    case ErrorKind::parse: return "ParseError";
    case ErrorKind::overflow: return "Overflow";
  }
  return "Unknown";
}

namespace {

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorKind::parse, "not an exact number: '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer pow10(std::int64_t exponent) {
  Integer result = 1;
  for (std::int64_t i = 0; i < exponent; ++i) result *= 10;
  return result;
}

// Parses [+-]digits with no further decoration.
Integer parse_integer(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) bad_number(whole);
  Integer value{std::string(text)};
  return negative ? Integer(-value) : value;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  std::int64_t exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    const Integer parsed = parse_integer(text.substr(e + 1), whole);
    if (parsed > 4096 || parsed < -4096) bad_number(whole);
    exponent = parsed.convert_to<std::int64_t>();
    text = text.substr(0, e);
  }

  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) bad_number(whole);
  if (!int_part.empty() && !all_digits(int_part)) bad_number(whole);
  if (!frac_part.empty() && !all_digits(frac_part)) bad_number(whole);

  const std::string digits = std::string(int_part) + std::string(frac_part);
  Integer mantissa{digits.empty() ? std::string("0") : digits};
  if (negative) mantissa = -mantissa;

  exponent -= static_cast<std::int64_t>(frac_part.size());
  if (exponent >= 0) return Rational(mantissa * pow10(exponent));
  return Rational(mantissa, pow10(-exponent));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad_number(whole);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(text.substr(0, slash), whole);
    const Integer den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw Error(ErrorKind::parse, "zero denominator in '" + std::string(whole) + "'");
    return Rational(num, den);
  }
  return parse_decimal(text, whole);
}

std::string to_string(const Rational& value) {
  const Integer& num = boost::multiprecision::numerator(value);
  const Integer& den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Integer floor(const Rational& value) {
  const Integer& num = boost::multiprecision::numerator(value);
  const Integer& den = boost::multiprecision::denominator(value);
  Integer q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Integer ceil(const Rational& value) {
  const Integer& num = boost::multiprecision::numerator(value);
  const Integer& den = boost::multiprecision::denominator(value);
  Integer q = num / den;
  if (num > 0 && q * den != num) q += 1;
  return q;
}

std::string to_decimal(const Rational& value, int digits) {
  const Integer scale = pow10(digits);
  const bool negative = value < 0;
  const Rational magnitude = negative ? Rational(-value) : value;
  const Integer scaled = floor(magnitude * scale + Rational(1, 2));
  const Integer int_part = scaled / scale;
  std::string frac = Integer(scaled % scale).str();
  if (digits == 0) return (negative ? "-" : "") + int_part.str();
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  return (negative ? "-" : "") + int_part.str() + "." + frac;
}

std::int64_t to_int64(const Integer& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::overflow, "value " + value.str() + " exceeds the 64-bit day range");
  }
  return value.convert_to<std::int64_t>();
}

}  // namespace bamboo

#ifndef MOREKG_NUMERIC_HPP
#define MOREKG_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "morekg/rdf/term.hpp"

namespace morekg {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline bool isIntegerDatatype(std::string_view dt) {
  if (dt.substr(0, rdf::ns::kXsd.size()) != rdf::ns::kXsd) return false;
  std::string_view local = dt.substr(rdf::ns::kXsd.size());
  return local == "integer" || local == "int" || local == "long" ||
         local == "short" || local == "byte" || local == "nonNegativeInteger" ||
         local == "positiveInteger" || local == "negativeInteger" ||
         local == "nonPositiveInteger" || local == "unsignedInt" ||
         local == "unsignedLong" || local == "unsignedShort" ||
         local == "unsignedByte";
}

inline bool isNumericDatatype(std::string_view dt) {
  return isIntegerDatatype(dt) || dt == rdf::xsd::kDecimal ||
         dt == rdf::xsd::kDouble || dt == std::string(rdf::ns::kXsd) + "float";
}

// Parses [+-]?digits[.digits][(e|E)[+-]?digits] into an exact rational.
// `allowFraction` and `allowExponent` restrict the accepted forms.
inline std::optional<Rational> parseDecimalText(std::string_view text,
                                                bool allowFraction = true,
                                                bool allowExponent = false) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  BigInt mantissa = 0;
  int scale = 0;
  std::size_t digits = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    mantissa = mantissa * 10 + (text[i] - '0');
    ++i;
    ++digits;
  }
  if (i < text.size() && text[i] == '.') {
    if (!allowFraction) return std::nullopt;
    ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      mantissa = mantissa * 10 + (text[i] - '0');
      ++scale;
      ++i;
      ++digits;
    }
  }
  if (digits == 0) return std::nullopt;
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    if (!allowExponent) return std::nullopt;
    ++i;
    bool expNeg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      expNeg = text[i] == '-';
      ++i;
    }
    std::size_t expDigits = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 4000) return std::nullopt;
      ++i;
      ++expDigits;
    }
    if (expDigits == 0) return std::nullopt;
    if (expNeg) exponent = -exponent;
  }
  if (i != text.size()) return std::nullopt;
  long shift = exponent - scale;
  Rational r(mantissa);
  BigInt p = boost::multiprecision::pow(BigInt(10),
                                        static_cast<unsigned>(shift < 0 ? -shift : shift));
  if (shift < 0) {
    r /= p;
  } else {
    r *= p;
  }
  return negative ? Rational(-r) : r;
}

// Exact value of a numeric literal; nullopt for non-numeric datatypes or
// lexical forms that do not parse under their datatype.
inline std::optional<Rational> numericValue(const rdf::Term& t) {
  if (!t.isLiteral()) return std::nullopt;
  const std::string& dt = t.datatype();
  if (isIntegerDatatype(dt)) return parseDecimalText(t.value(), false, false);
  if (dt == rdf::xsd::kDecimal) return parseDecimalText(t.value(), true, false);
  if (isNumericDatatype(dt)) return parseDecimalText(t.value(), true, true);
  return std::nullopt;
}

// Fixed-point rendering, rounding half away from zero.
inline std::string formatFixed(const Rational& value, unsigned places) {
  BigInt scale = boost::multiprecision::pow(BigInt(10), places);
  Rational scaled = abs(value) * scale;
  BigInt num = numerator(scaled);
  BigInt den = denominator(scaled);
  BigInt q = num / den;
  BigInt rem = num % den;
  if (rem * 2 >= den) q += 1;
  std::string digits = q.str();
  if (digits.size() <= places) {
    digits.insert(0, places + 1 - digits.size(), '0');
  }
  std::string out;
  if (value < 0 && q != 0) out.push_back('-');
  out += digits.substr(0, digits.size() - places);
  if (places > 0) {
    out.push_back('.');
    out += digits.substr(digits.size() - places);
  }
  return out;
}

// Exact decimal rendering when the value has a terminating expansion (at
// most `maxPlaces` digits), otherwise fixed with `maxPlaces`.
inline std::string formatDecimal(const Rational& value, unsigned maxPlaces = 6) {
  for (unsigned places = 0; places <= maxPlaces; ++places) {
    BigInt scale = boost::multiprecision::pow(BigInt(10), places);
    Rational scaled = value * scale;
    if (denominator(scaled) == 1) {
      std::string s = formatFixed(value, places);
      if (places == 0) s += ".0";
      return s;
    }
  }
  return formatFixed(value, maxPlaces);
}

}  // namespace morekg

#endif  // MOREKG_NUMERIC_HPP

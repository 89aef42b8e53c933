/// \file rational.cpp
/// Exact rational parsing/formatting helpers.

#include "frobforge/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace frobforge {

namespace {

std::string strip(const std::string& s) {
  size_t a = 0;
  size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Decimal-only integer parsing. BigInt's own string constructor follows C
// literal rules, so a leading zero would silently switch to octal.
BigInt parse_bigint(const std::string& text) {
  size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos >= text.size()) throw std::invalid_argument("bad integer literal: " + text);
  BigInt acc = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw std::invalid_argument("bad integer literal: " + text);
    }
    acc = acc * 10 + (text[pos] - '0');
  }
  return negative ? BigInt(-acc) : acc;
}

// Parse a decimal literal (optionally signed, with fraction digits and an
// optional exponent) into an exact rational.
Rational parse_decimal(const std::string& text) {
  size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_len = 0;
  bool seen_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits += text[pos++];
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits += text[pos++];
      ++frac_len;
      seen_digit = true;
    }
  }
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size()) throw std::invalid_argument("bad rational literal: " + text);
    long e = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      e = e * 10 + (text[pos++] - '0');
    }
    exponent = exp_neg ? -e : e;
  }
  if (!seen_digit || pos != text.size()) {
    throw std::invalid_argument("bad rational literal: " + text);
  }
  BigInt mantissa = digits.empty() ? BigInt(0) : parse_bigint(digits);
  if (negative) mantissa = -mantissa;
  long net = exponent - frac_len;
  BigInt pow10 = 1;
  for (long i = 0; i < std::labs(net); ++i) pow10 *= 10;
  if (net >= 0) return Rational(mantissa * pow10);
  return Rational(mantissa, pow10);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const size_t slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string num = strip(s.substr(0, slash));
    const std::string den = strip(s.substr(slash + 1));
    if (num.empty() || den.empty()) throw std::invalid_argument("bad rational literal: " + text);
    BigInt p = parse_bigint(num);
    BigInt q = parse_bigint(den);
    if (q == 0) throw std::invalid_argument("zero denominator in rational literal: " + text);
    return Rational(p, q);
  }
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos) {
    return parse_decimal(s);
  }
  return Rational(parse_bigint(s));
}

std::string format_rational(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt factorial(unsigned n) {
  BigInt acc = 1;
  for (unsigned k = 2; k <= n; ++k) acc *= k;
  return acc;
}

}  // namespace frobforge

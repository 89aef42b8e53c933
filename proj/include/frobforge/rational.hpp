/// \file rational.hpp
/// Exact rational scalars and rational-complex coefficients used by the
/// potential representation and the series oracle.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace frobforge {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

/// Parse "p/q", "p", or a decimal string ("0.5") into an exact rational.
Rational parse_rational(const std::string& text);

/// Render a rational as "p" or "p/q".
std::string format_rational(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact complex number with rational real/imaginary parts. Closed under the
/// term-level differentiation used by the calculus engine.
struct RationalComplex {
  Rational re{0};
  Rational im{0};

  RationalComplex() = default;
  RationalComplex(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
  explicit RationalComplex(Rational real) : re(std::move(real)) {}
  explicit RationalComplex(long long real) : re(real) {}

  RationalComplex& operator+=(const RationalComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
  friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend RationalComplex operator*(const RationalComplex& a, const Rational& s) {
    return {a.re * s, a.im * s};
  }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  bool is_zero() const { return re == 0 && im == 0; }
  Complex value() const { return {to_double(re), to_double(im)}; }
};

/// Exact rational factorial (n!) for series denominators.
BigInt factorial(unsigned n);

}  // namespace frobforge

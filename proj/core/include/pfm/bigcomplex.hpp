// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pfm/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace pfm {

using BigFloat = boost::multiprecision::mpfr_float;  // variable precision

inline constexpr unsigned kMinPrecision = 20;
inline constexpr unsigned kDefaultPrecision = 60;

inline BigFloat make_float(unsigned digits) {
  BigFloat x(0);
  x.precision(digits);
  return x;
}

BigFloat rational_to_float(const Rational& q, unsigned digits);

// Complex number over MPFR reals. Every value carries a decimal-digit
// precision; binary operations coerce to the minimum operand precision.
class BigComplex {
 public:
  BigComplex() : BigComplex(0, 0, kDefaultPrecision) {}
  BigComplex(long re, long im, unsigned digits);
  BigComplex(BigFloat re, BigFloat im, unsigned digits);
  static BigComplex from_rational(const Rational& re, unsigned digits);
  static BigComplex from_rational(const Rational& re, const Rational& im, unsigned digits);

  const BigFloat& real() const { return re_; }
  const BigFloat& imag() const { return im_; }
  unsigned precision() const { return prec_; }

  BigFloat abs() const;
  BigComplex conj() const { return BigComplex(re_, -im_, prec_); }

  BigComplex operator-() const { return BigComplex(-re_, -im_, prec_); }
  friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  BigComplex& operator+=(const BigComplex& b) { return *this = *this + b; }
  BigComplex& operator-=(const BigComplex& b) { return *this = *this - b; }
  BigComplex& operator*=(const BigComplex& b) { return *this = *this * b; }
  BigComplex& operator/=(const BigComplex& b) { return *this = *this / b; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  std::string str(unsigned digits = 0) const;

 private:
  void coerce();  // clamp both parts to prec_
  BigFloat re_, im_;
  unsigned prec_;
};

BigComplex cexp(const BigComplex& z);
BigComplex clog(const BigComplex& z);                   // principal branch
BigComplex cpow(const BigComplex& z, const BigComplex& w);
BigComplex csqrt(const BigComplex& z);

// log with an explicitly chosen continuous argument for z.
BigComplex clog_with_arg(const BigComplex& z, const BigFloat& arg);

BigFloat principal_arg(const BigComplex& z);

}  // namespace pfm

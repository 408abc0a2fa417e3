// SPDX-License-Identifier: Apache-2.0
#include "pfm/bigcomplex.hpp"

#include <algorithm>
#include <sstream>

namespace pfm {

namespace mp = boost::multiprecision;

BigFloat rational_to_float(const Rational& q, unsigned digits) {
  BigFloat num(boost::multiprecision::numerator(q), digits);
  BigFloat den(boost::multiprecision::denominator(q), digits);
  BigFloat r = num / den;
  r.precision(digits);
  return r;
}

BigComplex::BigComplex(long re, long im, unsigned digits)
    : re_(re), im_(im), prec_(std::max(digits, kMinPrecision)) {
  coerce();
}

BigComplex::BigComplex(BigFloat re, BigFloat im, unsigned digits)
    : re_(std::move(re)), im_(std::move(im)), prec_(std::max(digits, kMinPrecision)) {
  coerce();
}

BigComplex BigComplex::from_rational(const Rational& re, unsigned digits) {
  return BigComplex(rational_to_float(re, digits), make_float(digits), digits);
}

BigComplex BigComplex::from_rational(const Rational& re, const Rational& im, unsigned digits) {
  return BigComplex(rational_to_float(re, digits), rational_to_float(im, digits), digits);
}

void BigComplex::coerce() {
  re_.precision(prec_);
  im_.precision(prec_);
}

BigFloat BigComplex::abs() const {
  BigFloat r = mp::sqrt(re_ * re_ + im_ * im_);
  r.precision(prec_);
  return r;
}

static unsigned min_prec(const BigComplex& a, const BigComplex& b) {
  return std::min(a.precision(), b.precision());
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re_ + b.re_, a.im_ + b.im_, min_prec(a, b));
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re_ - b.re_, a.im_ - b.im_, min_prec(a, b));
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re_ * b.re_ - a.im_ * b.im_,
                    a.re_ * b.im_ + a.im_ * b.re_, min_prec(a, b));
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  BigFloat d = b.re_ * b.re_ + b.im_ * b.im_;
  return BigComplex((a.re_ * b.re_ + a.im_ * b.im_) / d,
                    (a.im_ * b.re_ - a.re_ * b.im_) / d, min_prec(a, b));
}

std::string BigComplex::str(unsigned digits) const {
  unsigned d = digits ? digits : prec_;
  std::ostringstream os;
  os << re_.str(d);
  if (!im_.is_zero()) {
    os << (im_ < 0 ? " - " : " + ") << BigFloat(mp::abs(im_)).str(d) << "*I";
  }
  return os.str();
}

BigComplex cexp(const BigComplex& z) {
  unsigned p = z.precision();
  BigFloat r = mp::exp(z.real());
  return BigComplex(r * mp::cos(z.imag()), r * mp::sin(z.imag()), p);
}

BigFloat principal_arg(const BigComplex& z) {
  BigFloat a = mp::atan2(z.imag(), z.real());
  a.precision(z.precision());
  return a;
}

BigComplex clog(const BigComplex& z) {
  unsigned p = z.precision();
  return BigComplex(mp::log(z.abs()), principal_arg(z), p);
}

BigComplex clog_with_arg(const BigComplex& z, const BigFloat& arg) {
  unsigned p = z.precision();
  return BigComplex(mp::log(z.abs()), arg, p);
}

BigComplex cpow(const BigComplex& z, const BigComplex& w) {
  if (z.is_zero()) return BigComplex(0, 0, std::min(z.precision(), w.precision()));
  return cexp(w * clog(z));
}

BigComplex csqrt(const BigComplex& z) {
  return cpow(z, BigComplex(BigFloat(0.5), BigFloat(0), z.precision()));
}

}  // namespace pfm

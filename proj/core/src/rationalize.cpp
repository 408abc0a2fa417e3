// SPDX-License-Identifier: Apache-2.0
#include "pfm/rationalize.hpp"

namespace pfm {

namespace mp = boost::multiprecision;

Rational rationalize(const BigFloat& x, const BigInt& max_den, const BigFloat& tol) {
  if (max_den < 1) throw NoRationalFound("denominator bound below 1");
  auto close = [&](const Rational& q) {
    return mp::abs(BigFloat(x - rational_to_float(q, x.precision() + 10))) <= tol;
  };
  // continued fraction convergents p_k/q_k
  BigFloat r = x;
  BigInt p0 = 1, q0 = 0;  // p_{-1}/q_{-1}
  BigInt p1, q1;          // p_0/q_0 seeded below
  BigFloat a0 = mp::floor(r);
  BigInt a = a0.convert_to<BigInt>();
  p1 = a;
  q1 = 1;
  for (int iter = 0; iter < 200; ++iter) {
    if (q1 > max_den) break;
    Rational conv(p1, q1);
    if (close(conv)) return conv;
    BigFloat frac = r - BigFloat(a);
    if (frac <= 0) break;
    r = 1 / frac;
    BigFloat af = mp::floor(r);
    a = af.convert_to<BigInt>();
    BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  // last convergent within the bound may still qualify
  if (q1 <= max_den && close(Rational(p1, q1))) return Rational(p1, q1);
  if (q0 >= 1 && q0 <= max_den && close(Rational(p0, q0))) return Rational(p0, q0);
  throw NoRationalFound("no rational with denominator <= " + max_den.str() +
                        " within tolerance");
}

GaussianRational rationalize(const BigComplex& z, const BigInt& max_den, const BigFloat& tol) {
  GaussianRational g;
  if (mp::abs(z.real()) > tol) g.re = rationalize(z.real(), max_den, tol);
  if (mp::abs(z.imag()) > tol) g.im = rationalize(z.imag(), max_den, tol);
  return g;
}

}  // namespace pfm

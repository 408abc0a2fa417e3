// SPDX-License-Identifier: Apache-2.0
#include "pfm/constants.hpp"

#include <mpfr.h>

namespace pfm {

namespace mp = boost::multiprecision;

static BigFloat mpfr_pi(unsigned digits) {
  BigFloat x = make_float(digits);
  mpfr_const_pi(x.backend().data(), MPFR_RNDN);
  return x;
}

static BigFloat mpfr_zeta3(unsigned digits) {
  BigFloat x = make_float(digits);
  mpfr_zeta_ui(x.backend().data(), 3, MPFR_RNDN);
  return x;
}

Constants compute_constants(unsigned digits) {
  if (digits < kMinPrecision) digits = kMinPrecision;
  Constants c;
  c.precision = digits;
  c.pi = mpfr_pi(digits);
  c.zeta3 = mpfr_zeta3(digits);

  // self-check against a recomputation at double precision
  BigFloat pi2 = mpfr_pi(2 * digits);
  BigFloat z2 = mpfr_zeta3(2 * digits);
  BigFloat tol = mp::pow(BigFloat(10, digits), -static_cast<long>(digits) + 2);
  if (mp::abs(BigFloat(pi2 - c.pi)) > tol || mp::abs(BigFloat(z2 - c.zeta3)) > tol)
    throw ConstantsError("constant self-check failed");

  c.two_pi_i = BigComplex(make_float(digits), 2 * c.pi, digits);
  // (2*pi*i)^3 = -8*pi^3*i, so u = zeta3/(2*pi*i)^3 = i*zeta3/(8*pi^3)
  BigFloat denom = 8 * c.pi * c.pi * c.pi;
  c.unit = BigComplex(make_float(digits), c.zeta3 / denom, digits);
  return c;
}

}  // namespace pfm

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pfm/bigcomplex.hpp"

namespace pfm {

struct ConstantsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// pi, zeta(3) and the recurring unit u = zeta(3)/(2*pi*i)^3, all at the
// requested working precision. Values are recomputed at double precision
// internally and cross-checked before being returned.
struct Constants {
  BigFloat pi;
  BigFloat zeta3;
  BigComplex two_pi_i;    // 2*pi*i
  BigComplex unit;        // zeta(3)/(2*pi*i)^3, purely imaginary
  unsigned precision = 0;
};

Constants compute_constants(unsigned digits);

}  // namespace pfm

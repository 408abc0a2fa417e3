// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pfm/bigcomplex.hpp"

namespace pfm {

struct NoRationalFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GaussianRational {
  Rational re{0};
  Rational im{0};
  bool is_real() const { return im == 0; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

// Best rational approximation with denominator <= max_den, via the continued
// fraction expansion of x. Throws NoRationalFound when no convergent lands
// within tol of x.
Rational rationalize(const BigFloat& x, const BigInt& max_den, const BigFloat& tol);

// Componentwise rationalization; a part smaller than tol snaps to zero.
GaussianRational rationalize(const BigComplex& z, const BigInt& max_den, const BigFloat& tol);

}  // namespace pfm

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace pfm {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline bool is_nonneg_integer(const Rational& q) { return is_integer(q) && q >= 0; }

/// Parses "p/q" or "p" (optional sign, q > 0 after normalization).
Rational parse_rational(const std::string& text);

/// Canonical rendering: "p" when q = 1, otherwise "p/q" with q > 0.
std::string render_rational(const Rational& q);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pfm

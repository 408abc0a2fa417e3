// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pfm/cmatrix.hpp"
#include "pfm/poly.hpp"
#include "pfm/rationalize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pfm {

// Linear differential operator sum_i P_i(z) theta^i with theta = z d/dz
// and P_i in Q[z].
struct Operator {
  int order = 0;
  std::vector<RationalPoly> theta;  // index = theta power, size order+1

  bool valid() const {
    return order >= 2 && static_cast<int>(theta.size()) == order + 1 &&
           !theta.back().is_zero();
  }
  friend bool operator==(const Operator&, const Operator&) = default;
};

Operator parse_operator(const std::string& json_text);
std::string render_operator(const Operator& op);

// theta^4 - C z (theta+A)(theta+1-A)(theta+B)(theta+1-B)
Operator from_hypergeometric4(const Rational& A, const Rational& B, const Rational& C);
// theta^5 - z (theta+1/2)(theta+A)(theta+1-A)(theta+B)(theta+1-B)
Operator from_hypergeometric5(const Rational& A, const Rational& B);

enum class PointClass { MaximallyUnipotent, Conifold, ApparentCandidate, General };

struct SingularPoint {
  bool at_infinity = false;
  bool exact = false;              // location known as a Gaussian rational
  GaussianRational location_exact; // meaningful when exact
  BigComplex location;             // always set for finite points
  int multiplicity = 1;            // as a root of the leading coefficient
  std::vector<Rational> exponents; // sorted, with multiplicity
  bool regular_singular = false;
  PointClass classification = PointClass::General;
};

// Coefficients of the operator written as sum_k Q_k(z) (d/dz)^k.
std::vector<RationalPoly> derivative_form(const Operator& op);

// Monic d/dz form: r[k] = Q_k/Q_n for k = 0..n-1.
std::vector<RationalFunction> to_monic_derivative_form(const Operator& op);

// Operator in w = 1/z whose behaviour at w=0 matches op at infinity.
Operator transform_infinity(const Operator& op);

// Recurrence polynomials B_j at a rational centre: solutions t^(lam+m)
// satisfy sum_j B_j(lam+m-j) c_{m-j} = 0 with t = z - z0. B_0 is the
// indicial polynomial.
std::vector<RationalPoly> recurrence_polys(const Operator& op, const Rational& z0);
std::vector<RationalPoly> recurrence_polys_infinity(const Operator& op);
// Same at a non-rational centre, numerically at the given precision.
// b[j] holds the coefficients of B_j as a polynomial in lambda.
std::vector<std::vector<BigComplex>> recurrence_polys_numeric(const Operator& op,
                                                              const BigComplex& z0,
                                                              unsigned digits);

struct ExponentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IndicialData {
  std::vector<Rational> exponents;  // sorted with multiplicity
  bool regular_singular = false;
};

// Exponents at a finite rational point, at infinity, or at a numeric point.
// Non-rational indicial roots raise ExponentError.
IndicialData indicial_exponents(const Operator& op, const Rational& z0);
IndicialData indicial_exponents_infinity(const Operator& op);
IndicialData indicial_exponents_numeric(const Operator& op, const BigComplex& z0,
                                        unsigned digits);

PointClass classify_exponents(int order, const std::vector<Rational>& exps);

// Newton refinement of an approximate finite singular location (a root of
// the squarefree part of the leading coefficient) to the given precision.
BigComplex refine_singular_location(const Operator& op, const BigComplex& z0,
                                    unsigned digits);

// All finite singular points (always including 0) at the given working
// precision, plus the point at infinity as the final entry.
std::vector<SingularPoint> singular_points(const Operator& op,
                                           unsigned digits = kDefaultPrecision);

enum class Verdict { Pass, Fail, NotChecked };

struct CyTypeReport {
  Verdict a = Verdict::NotChecked;  // all singularities regular
  Verdict b = Verdict::NotChecked;  // exponents at 0 all zero
  Verdict c = Verdict::NotChecked;  // a conifold point exists
  Verdict d = Verdict::NotChecked;  // first N holomorphic coefficients integral
  Verdict e = Verdict::NotChecked;  // exponent symmetry at infinity + cyclotomic test
  Verdict f = Verdict::NotChecked;  // exact coefficient identity on the monic form
  Verdict g = Verdict::NotChecked;  // never computable here
  std::string witness;              // first failure description
  bool passed() const {
    return a == Verdict::Pass && b == Verdict::Pass && c == Verdict::Pass &&
           d == Verdict::Pass && e != Verdict::Fail && f == Verdict::Pass;
  }
};

// monodromy_charpoly, when supplied, is the exact characteristic polynomial
// of the monodromy at infinity; without it the cyclotomic half of (e) is
// reported not-checked.
CyTypeReport cy_type_check(const Operator& op, int N,
                           const std::optional<RationalPoly>& monodromy_charpoly = std::nullopt);

// First count coefficients of the holomorphic solution at 0 (c_0 = 1).
std::vector<Rational> holomorphic_coefficients(const Operator& op, int count);

// True when p is a nonzero constant times a product of cyclotomic polynomials.
bool is_cyclotomic_product(const RationalPoly& p);

}  // namespace pfm

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pfm/monodromy.hpp"
#include "pfm/scaled.hpp"

namespace pfm {

struct NotRawForm : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonIntegerInvariant : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInLevelFamily : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Geometric invariants read off a conifold loop matrix.
struct Invariants {
  BigInt d;    // triple intersection H^3
  BigInt c2H;  // c_2 . H
  BigInt c3;   // Euler characteristic contribution c_3
  Rational b() const { return Rational(c2H, 24); }
  Rational k() const { return Rational(d, 6) + Rational(c2H, 12); }
  ScaledRational a() const { return ScaledRational(0, Rational(c3), 0); }
  friend bool operator==(const Invariants&, const Invariants&) = default;
};

// Level data of the congruence families. Two-parameter levels have
// d3 == 1; the three-parameter family allows a denominator d3 in the
// (1,3) entry. d1 == 0 marks a completely unconstrained level.
struct CongruenceLevel {
  BigInt d1 = 0;
  BigInt d2 = 0;
  BigInt d3 = 1;
  bool three_parameter = false;
  friend bool operator==(const CongruenceLevel&, const CongruenceLevel&) = default;
};

// Reads (d, c2H, c3) off a conifold loop in the normalized origin basis and
// checks every entry of the closed raw form, within tol.
Invariants extract_invariants(const CMatrix& t, const Constants& c,
                              const BigFloat& tol = BigFloat("1e-8"));

// Exact loop pair (T_0, T_conifold) in the normalized basis.
std::pair<ExactMatrix, ExactMatrix> theorem1_pair(const Invariants& inv, int order = 4);

// Change of basis taking the normalized tuple to the integral symplectic one;
// conjugation by it maps the exact raw pair to
//   [[1,1,0,0],[0,1,0,0],[d,d,1,0],[0,-k,-1,1]] and
//   [[1,0,0,0],[0,1,0,1],[0,0,1,0],[0,0,0,1]].
ExactMatrix cy_conjugator(const Invariants& inv);
std::vector<ExactMatrix> cy_conjugate(const std::vector<ExactMatrix>& gens,
                                      const Invariants& inv);

// Alternative integral form with loop pair
//   [[1,1,0,0],[0,1,d,0],[0,0,1,1],[0,0,0,1]] and
//   [[1,0,0,0],[-k,1,0,0],[-1,0,1,0],[-1,0,0,1]].
ExactMatrix dm_conjugator(const Invariants& inv);
std::vector<ExactMatrix> dm_conjugate(const std::vector<ExactMatrix>& gens,
                                      const Invariants& inv);

// Checks M^T J M = J and the block characterization of the inverse,
// gamma^{-1} = [[D^t, -B^t], [-C^t, A^t]]. Exact and floating variants.
bool symplectic_check(const ExactMatrix& m);
bool symplectic_check(const CMatrix& m, const BigFloat& tol);

// Largest level of the congruence family containing every generator.
CongruenceLevel congruence_level(const std::vector<ExactMatrix>& gens);

// The four congruences implied by symplecticity plus the level pattern.
bool implicit_congruence_check(const ExactMatrix& m, const CongruenceLevel& level);

// Full membership in the level pattern: zero slots divisible by d1, the
// (1,1) and (3,3) entries congruent to 1 mod d1 (mod d1/d3 for the
// three-parameter family), the lower 2x2 pattern mod d2, and the (1,3)
// entry integral up to a d3 denominator.
bool in_congruence_level(const ExactMatrix& m, const CongruenceLevel& level);

// Index of the two-parameter level subgroup in the full integral symplectic
// group: d1^4 prod_{p|d1}(1 - p^-4) * d2^2 prod_{p|d2}(1 - p^-2).
BigInt group_index(const CongruenceLevel& level);

// Order of the rank-2 symplectic group over Z/nZ:
// n^10 prod_{p|n}(1 - p^-2)(1 - p^-4).
BigInt sp4_mod_order(const BigInt& n);

// Common row direction of T - I for a unipotent rank-one T, normalized so
// the first nonzero entry from the right is positive.
std::vector<ScaledRational> vanishing_cycle(const ExactMatrix& t);

// Characteristic polynomial of the loop at infinity against
// x^4 + (k-4)x^3 + (6-2k+d)x^2 + (k-4)x + 1.
bool dm_charpoly_check(const ExactMatrix& t_inf, const Invariants& inv);
bool dm_charpoly_check(const CMatrix& t_inf, const Invariants& inv, const BigFloat& tol);

// Order-5 closed forms: parameters and the exact loop pair. The pair lives
// in the Frobenius basis of the rescaled variable w = scale * z, where
// scale is the coefficient-integrality normalizer of the series; loops
// computed in the z basis are carried over by the band matrix with
// superdiagonal profile tau^k / k!, tau = log(scale) / (2 pi i).
struct FifthOrderParameters {
  Rational a2;     // a^2
  Rational c2;     // c^2
  Rational ac;     // positive square root of a2 * c2 (rational in every case)
  Rational xp;     // x = xp * u
  BigInt scale;    // rescaling constant for the integral variable
};
FifthOrderParameters theorem3_parameters(const Rational& A, const Rational& B);
std::pair<ExactMatrix, ExactMatrix> theorem3_pair(const Rational& A, const Rational& B);

// Numeric conjugation s * g * s^-1 followed by entrywise rationalization.
// This is how floating generator sets are carried into the exact integral
// basis: conjugate first, snap after, so only plain rationals are snapped.
ExactMatrix conjugate_and_snap(const CMatrix& g, const ExactMatrix& s,
                               const Constants& c, const BigInt& max_den,
                               const BigFloat& tol);

// CMatrix -> nested vector adapter for snap_matrix.
std::vector<std::vector<BigComplex>> matrix_rows(const CMatrix& m);

}  // namespace pfm

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pfm/constants.hpp"
#include "pfm/continuation.hpp"

namespace pfm {

struct MonodromyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Change of basis from the Frobenius solutions y_0..y_{n-1} at a point of
// maximal unipotency to the normalized tuple
//   (y_{n-1}/(2 pi i)^{n-1}, ..., y_1/(2 pi i), y_0).
// Row convention throughout: a loop acts as Y -> T Y on the column of
// basis functions.
CMatrix scaling_to_normalized(int order, const Constants& c);

// Local loop matrix at the origin in the normalized basis: T[a][b] = 1/(b-a)!.
CMatrix unipotent_origin_loop(int order, unsigned digits);

struct MonodromyResult {
  CMatrix t;          // loop matrix in the normalized origin basis
  BigFloat error;     // propagated numerical error estimate
  bool is_identity = false;
};

// Monodromy of a counterclockwise loop around the finite point p, based at
// the origin (which must be a point of maximal unipotency). Branch cuts
// follow the below-axis convention of initial_arg.
MonodromyResult monodromy_about(const Operator& op, const ExpansionPoint& p,
                                const ContinuationConfig& cfg);

// Loop about a rational singular point with one fixed truncation and a
// prescribed common evaluation point between the two bases; no adaptive
// refinement. Used for low-budget replication experiments.
CMatrix fixed_truncation_loop(const Operator& op, const Rational& target,
                              const Rational& common, int terms, unsigned digits);

struct GeneratorSet {
  std::vector<SingularPoint> points;   // finite singular points, loop order
  std::vector<MonodromyResult> loops;  // one loop matrix per finite point
  MonodromyResult loop_infinity;       // ordered product of the finite loops
};

// Loop matrices around every finite singular point (the origin handled by
// the exact local formula) plus the loop around infinity obtained from the
// relation T_inf = T_k * ... * T_1 * T_0 with the finite points ordered by
// argument, then by modulus.
GeneratorSet monodromy_generators(const Operator& op, const ContinuationConfig& cfg);

}  // namespace pfm

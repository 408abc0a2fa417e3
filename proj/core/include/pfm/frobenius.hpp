// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pfm/cmatrix.hpp"
#include "pfm/operator.hpp"

namespace pfm {

struct ObstructionAnomaly : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Where a local basis lives. Finite points are rational when possible so
// series setup stays exact; infinity works in w = 1/z.
struct ExpansionPoint {
  bool at_infinity = false;
  bool rational = false;
  Rational q;    // set when rational
  BigComplex z;  // numeric location of the finite point

  static ExpansionPoint origin() { return from_rational(Rational(0)); }
  static ExpansionPoint from_rational(const Rational& r) {
    ExpansionPoint p;
    p.rational = true;
    p.q = r;
    p.z = BigComplex::from_rational(r, kDefaultPrecision);
    return p;
  }
  static ExpansionPoint from_complex(const BigComplex& z) {
    ExpansionPoint p;
    p.z = z;
    return p;
  }
  static ExpansionPoint infinity() {
    ExpansionPoint p;
    p.at_infinity = true;
    return p;
  }
};

// One Frobenius solution t^lambda sum_k (log t)^k/k! f_k(t) in the local
// variable t (t = z - z0, or t = w = 1/z at infinity).
// parts[k][m] is the coefficient of t^(lambda+m) (log t)^k / k!.
struct LogSeries {
  Rational lambda;
  std::vector<std::vector<BigComplex>> parts;
  int log_depth() const { return static_cast<int>(parts.size()) - 1; }
};

struct SlotInfo {
  int class_id = 0;  // exponent class (exponents congruent mod 1)
  int offset = 0;    // lambda - lambda_star of the class
  int depth = 0;     // echelon log depth of the defining slot
};

struct ExponentClass {
  Rational lambda_star;
  std::vector<std::pair<int, int>> resonances;  // (integer offset, multiplicity)
};

struct FrobeniusBasis {
  ExpansionPoint point;
  int order = 0;
  int terms = 0;  // truncation N
  unsigned digits = kDefaultPrecision;
  BigFloat radius;  // distance to the nearest other singularity (0 = unknown)
  std::vector<LogSeries> solutions;  // classes ascending, then slot order
  std::vector<SlotInfo> slots;       // parallel to solutions
  std::vector<ExponentClass> classes;
};

// Continuous-argument record fixing the branch of log t at an evaluation
// point; arg need not be principal.
struct BranchRecord {
  BigFloat arg;
};

FrobeniusBasis frobenius_basis(const Operator& op, const ExpansionPoint& point,
                               int N, unsigned digits = kDefaultPrecision,
                               const BigFloat& radius = BigFloat(0));

// W[i][k] = y_i^(k)(z), derivatives taken with respect to z itself (also at
// infinity bases, where the chain rule through w = 1/z is applied).
// tail_estimate, when given, receives the truncation-tail heuristic.
CMatrix evaluate_basis(const FrobeniusBasis& basis, const BigComplex& z,
                       const BranchRecord& branch, BigFloat* tail_estimate = nullptr);

// Effect of one counterclockwise loop around the base point:
// y_j goes to sum_i L[j][i] y_i. Exact closed form in 2*pi*i and the
// stored series coefficients.
CMatrix local_monodromy(const FrobeniusBasis& basis);

std::string render_basis(const FrobeniusBasis& basis);  // debug dump

}  // namespace pfm

// SPDX-License-Identifier: Apache-2.0
#include "pfm/frobenius.hpp"
#include "pfm/monodromy.hpp"

#include "doctest.h"

using namespace pfm;

namespace {
double d(const BigFloat& x) { return x.convert_to<double>(); }
Operator quintic() {
  return from_hypergeometric4(Rational(1, 5), Rational(2, 5), Rational(3125));
}
}  // namespace

TEST_CASE("origin basis of the quintic operator") {
  Operator op = quintic();
  auto basis = frobenius_basis(op, ExpansionPoint::origin(), 40, 60);
  REQUIRE(basis.solutions.size() == 4);
  // Echelon log depths 0..3, one solution per depth.
  for (int i = 0; i < 4; ++i) {
    CHECK(basis.solutions[i].lambda == 0);
    CHECK(basis.slots[i].depth == i);
  }
  // The depth-0 solution is the holomorphic one.
  auto coeffs = holomorphic_coefficients(op, 10);
  for (int m = 0; m < 10; ++m) {
    BigComplex expect = BigComplex::from_rational(coeffs[m], 60);
    CHECK(d((basis.solutions[0].parts[0][m] - expect).abs()) < 1e-50);
  }
}

TEST_CASE("conifold basis exponents and resonance") {
  Operator op = quintic();
  auto basis = frobenius_basis(op, ExpansionPoint::from_rational(Rational(1, 3125)), 40, 60);
  REQUIRE(basis.solutions.size() == 4);
  std::vector<Rational> lambdas;
  int max_depth = 0;
  for (std::size_t i = 0; i < basis.solutions.size(); ++i) {
    lambdas.push_back(basis.solutions[i].lambda);
    max_depth = std::max(max_depth, basis.slots[i].depth);
  }
  std::sort(lambdas.begin(), lambdas.end());
  CHECK(lambdas == std::vector<Rational>{0, 1, 1, 2});
  // The repeated exponent 1 carries the single logarithm that makes the
  // local loop unipotent of rank one.
  CHECK(max_depth == 1);
}

TEST_CASE("local monodromy at the origin matches the band matrix") {
  Operator op = quintic();
  auto basis = frobenius_basis(op, ExpansionPoint::origin(), 30, 60);
  Constants con = compute_constants(60);
  CMatrix l = local_monodromy(basis);
  CMatrix s = scaling_to_normalized(4, con);
  CMatrix t = s * l * s.inverse();
  CHECK(d(t.max_diff(unipotent_origin_loop(4, 60))) < 1e-50);
}

TEST_CASE("evaluated Wronskian identity") {
  Operator op = quintic();
  auto basis = frobenius_basis(op, ExpansionPoint::origin(), 60, 60);
  BranchRecord br{BigFloat(0, 60)};
  BigComplex z = BigComplex::from_rational(Rational(1, 100000), 60);
  CMatrix w = evaluate_basis(basis, z, br);
  auto wr = [&](int i, int j) {
    return w.at(i, 0) * w.at(j, 1) - w.at(j, 0) * w.at(i, 1);
  };
  BigComplex lhs = wr(0, 3), rhs = wr(1, 2);
  CHECK(d((lhs - rhs).abs()) < 1e-40 * d(lhs.abs()));
}

TEST_CASE("tail estimate shrinks with the truncation order") {
  Operator op = quintic();
  BranchRecord br{BigFloat(0, 60)};
  BigComplex z = BigComplex::from_rational(Rational(1, 6250), 60);
  BigFloat t1(0, 60), t2(0, 60);
  auto b1 = frobenius_basis(op, ExpansionPoint::origin(), 20, 60);
  auto b2 = frobenius_basis(op, ExpansionPoint::origin(), 80, 60);
  evaluate_basis(b1, z, br, &t1);
  evaluate_basis(b2, z, br, &t2);
  CHECK(d(t2) < d(t1));
  CHECK(d(t2) > 0);
}

TEST_CASE("branch record shifts logarithmic solutions by the loop formula") {
  Operator op = quintic();
  auto basis = frobenius_basis(op, ExpansionPoint::origin(), 40, 60);
  Constants con = compute_constants(60);
  BigComplex z = BigComplex::from_rational(Rational(1, 100000), 60);
  CMatrix w0 = evaluate_basis(basis, z, BranchRecord{BigFloat(0, 60)});
  CMatrix w1 = evaluate_basis(basis, z, BranchRecord{2 * con.pi});
  CMatrix l = local_monodromy(basis);
  CHECK(d((l * w0).max_diff(w1)) < 1e-45 * d(w0.max_norm()));
}

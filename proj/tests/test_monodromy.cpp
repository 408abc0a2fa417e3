// SPDX-License-Identifier: Apache-2.0
#include "pfm/analysis.hpp"
#include "pfm/monodromy.hpp"

#include "doctest.h"

using namespace pfm;

namespace {
double d(const BigFloat& x) { return x.convert_to<double>(); }
Operator quintic() {
  return from_hypergeometric4(Rational(1, 5), Rational(2, 5), Rational(3125));
}
}  // namespace

TEST_CASE("normalized origin loop is the factorial band") {
  CMatrix t = unipotent_origin_loop(4, 60);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Rational expect(0);
      if (b >= a) {
        expect = 1;
        for (int k = 1; k <= b - a; ++k) expect /= k;
      }
      CHECK(d((t.at(a, b) - BigComplex::from_rational(expect, 60)).abs()) < 1e-55);
    }
}

TEST_CASE("conifold loop of the quintic operator") {
  Operator op = quintic();
  ContinuationConfig cfg;
  auto res = monodromy_about(op, ExpansionPoint::from_rational(Rational(1, 3125)), cfg);
  REQUIRE_FALSE(res.is_identity);
  Constants con = compute_constants(cfg.precision);

  Invariants inv = extract_invariants(res.t, con);
  CHECK(inv.d == 5);
  CHECK(inv.c2H == 50);
  CHECK(inv.c3 == -200);

  // Symplectic once carried to the integral basis.
  ExactMatrix g = conjugate_and_snap(res.t, cy_conjugator(inv), con, BigInt(1000),
                                     BigFloat("1e-12"));
  CHECK(symplectic_check(g));

  // Unipotent of rank one: (M - I)^2 = 0.
  CMatrix n = res.t - CMatrix::identity(4, res.t.precision());
  CHECK(d((n * n).max_norm()) < 1e6 * d(res.error) + 1e-25);
}

TEST_CASE("generator set of the quintic operator") {
  Operator op = quintic();
  ContinuationConfig cfg;
  GeneratorSet gen = monodromy_generators(op, cfg);
  REQUIRE(gen.points.size() == 2);
  REQUIRE(gen.loops.size() == 2);
  CHECK(gen.points[0].location_exact == GaussianRational{Rational(0), Rational(0)});

  // Loop at infinity is the ordered product of the finite loops.
  CMatrix prod = gen.loops[1].t * gen.loops[0].t;
  CHECK(d(prod.max_diff(gen.loop_infinity.t)) <
        1e3 * (d(gen.loop_infinity.error) + 1e-30));

  // Its characteristic polynomial carries the invariants.
  Invariants inv{5, 50, -200};
  CHECK(dm_charpoly_check(gen.loop_infinity.t, inv, BigFloat("1e-20")));
}

TEST_CASE("fixed truncation replication at thirty terms") {
  Operator op = quintic();
  CMatrix t = fixed_truncation_loop(op, Rational(1, 3125), Rational(1, 6250), 30, 60);
  Constants con = compute_constants(60);
  auto pair = theorem1_pair(Invariants{5, 50, -200});
  auto tc = to_complex_rows(pair.second, con);
  BigFloat worst(0, 60);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      BigFloat e = (t.at(i, j) - tc[i][j]).abs();
      if (e > worst) worst = e;
    }
  // Thirty terms on both sides leave a truncation error of order 1e-4.
  CHECK(d(worst) < 1e-3);
  CHECK(d(worst) > 1e-8);
}

TEST_CASE("loop about an ordinary point is the identity") {
  Operator op = quintic();
  ContinuationConfig cfg;
  auto res = monodromy_about(op, ExpansionPoint::from_rational(Rational(1, 5000)), cfg);
  CHECK(res.is_identity);
  CHECK(d(res.t.max_diff(CMatrix::identity(4, res.t.precision()))) <
        1e3 * (d(res.error) + 1e-30));
}

// SPDX-License-Identifier: Apache-2.0
#include "pfm/catalog.hpp"
#include "pfm/operator.hpp"

#include "doctest.h"

using namespace pfm;

namespace {
Operator quintic() {
  return from_hypergeometric4(Rational(1, 5), Rational(2, 5), Rational(3125));
}
}  // namespace

TEST_CASE("operator JSON round trip and validation") {
  Operator op = quintic();
  CHECK(op.valid());
  CHECK(parse_operator(render_operator(op)) == op);
  CHECK_THROWS(parse_operator(""));
  CHECK_THROWS(parse_operator("{\"order\": 4}"));
}

TEST_CASE("singular points of the degree-5 hypergeometric operator") {
  Operator op = quintic();
  auto pts = singular_points(op, 60);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].location_exact == GaussianRational{Rational(0), Rational(0)});
  CHECK(pts[0].classification == PointClass::MaximallyUnipotent);
  CHECK(pts[0].exponents == std::vector<Rational>{0, 0, 0, 0});
  CHECK(pts[1].exact);
  CHECK(pts[1].location_exact == GaussianRational{Rational(1, 3125), Rational(0)});
  CHECK(pts[1].classification == PointClass::Conifold);
  CHECK(pts[1].exponents == std::vector<Rational>{0, 1, 1, 2});
  CHECK(pts[2].at_infinity);
  CHECK(pts[2].exponents ==
        std::vector<Rational>{{1, 5}, {2, 5}, {3, 5}, {4, 5}});
  CHECK(pts[2].regular_singular);
}

TEST_CASE("indicial exponents at finite points and infinity") {
  Operator op = quintic();
  auto c = indicial_exponents(op, Rational(1, 3125));
  CHECK(c.regular_singular);
  CHECK(c.exponents == std::vector<Rational>{0, 1, 1, 2});
  auto inf = indicial_exponents_infinity(op);
  CHECK(inf.exponents == std::vector<Rational>{{1, 5}, {2, 5}, {3, 5}, {4, 5}});
  // The w = 1/z transform shows the same exponents at w = 0.
  auto tw = indicial_exponents(transform_infinity(op), Rational(0));
  CHECK(tw.exponents == inf.exponents);
}

TEST_CASE("exponent classification") {
  CHECK(classify_exponents(4, {0, 0, 0, 0}) == PointClass::MaximallyUnipotent);
  CHECK(classify_exponents(4, {0, 1, 1, 2}) == PointClass::Conifold);
  CHECK(classify_exponents(4, {0, 1, 3, 4}) == PointClass::ApparentCandidate);
  CHECK(classify_exponents(4, {{0, 1}, {1, 2}, {1, 1}, {3, 2}}) == PointClass::General);
}

TEST_CASE("holomorphic solution coefficients of the quintic operator") {
  auto c = holomorphic_coefficients(quintic(), 6);
  REQUIRE(c.size() == 6);
  CHECK(c[0] == 1);
  CHECK(c[1] == 120);       // 5!/1
  CHECK(c[2] == 113400);    // 10!/2!^5
  CHECK(c[3] == 168168000); // 15!/3!^5
  for (const auto& x : c) CHECK(is_integer(x));
}

TEST_CASE("structural type check passes on the quintic operator") {
  auto rep = cy_type_check(quintic(), 50);
  CHECK(rep.a == Verdict::Pass);
  CHECK(rep.b == Verdict::Pass);
  CHECK(rep.c == Verdict::Pass);
  CHECK(rep.d == Verdict::Pass);
  CHECK(rep.f == Verdict::Pass);
  CHECK(rep.passed());
}

TEST_CASE("structural type check flags a non-example") {
  // theta^4 - z: exponents at infinity are not symmetric about 1/2 in the
  // required pattern and there is no conifold point.
  Operator op;
  op.order = 4;
  op.theta.assign(5, RationalPoly());
  op.theta[0] = RationalPoly({Rational(0), Rational(-1)});
  op.theta[4] = RationalPoly({Rational(1)});
  auto rep = cy_type_check(op, 20);
  CHECK_FALSE(rep.passed());
  CHECK_FALSE(rep.witness.empty());
}

TEST_CASE("six singularities of the triple product operator") {
  const CaseRecord& rec = catalog_case(17);
  REQUIRE(rec.op.has_value());
  auto pts = singular_points(*rec.op, 60);
  CHECK(pts.size() == 6);  // five finite points plus infinity
  bool has_apparent = false;
  for (const auto& p : pts)
    if (p.exact && p.location_exact == GaussianRational{Rational(5, 9), Rational(0)}) {
      has_apparent = true;
      CHECK(p.classification == PointClass::ApparentCandidate);
      CHECK(p.exponents == std::vector<Rational>{0, 1, 3, 4});
    }
  CHECK(has_apparent);
}

TEST_CASE("cyclotomic product detection") {
  // (x - 1)(x^2 + x + 1) = x^3 - 1
  CHECK(is_cyclotomic_product(RationalPoly({Rational(-1), Rational(0), Rational(0), Rational(1)})));
  CHECK(is_cyclotomic_product(RationalPoly({Rational(3)})));
  CHECK_FALSE(is_cyclotomic_product(RationalPoly({Rational(-1), Rational(-1), Rational(1)})));
  CHECK_FALSE(is_cyclotomic_product(RationalPoly()));
}

TEST_CASE("fifth order hypergeometric shape") {
  Operator op = from_hypergeometric5(Rational(1, 2), Rational(1, 2));
  CHECK(op.order == 5);
  auto pts = singular_points(op, 60);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].exponents == std::vector<Rational>{0, 0, 0, 0, 0});
  CHECK(pts[1].exact);
  CHECK(pts[1].location_exact == GaussianRational{Rational(1), Rational(0)});
  CHECK(pts[1].exponents == std::vector<Rational>{0, 1, 2, 3, 2});
}

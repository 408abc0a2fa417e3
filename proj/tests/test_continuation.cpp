// SPDX-License-Identifier: Apache-2.0
#include "pfm/continuation.hpp"

#include "doctest.h"

using namespace pfm;

namespace {
double d(const BigFloat& x) { return x.convert_to<double>(); }
Operator quintic() {
  return from_hypergeometric4(Rational(1, 5), Rational(2, 5), Rational(3125));
}
}  // namespace

TEST_CASE("waypoints from the origin to the nearby conifold") {
  unsigned p = 60;
  std::vector<BigComplex> sing = {BigComplex(0, 0, p),
                                  BigComplex::from_rational(Rational(1, 3125), p)};
  auto wps = plan_waypoints(BigComplex(0, 0, p),
                            BigComplex::from_rational(Rational(1, 3125), p), sing);
  REQUIRE(wps.size() == 3);
  CHECK(wps.front().is_anchor);
  CHECK(wps.back().is_anchor);
  CHECK_FALSE(wps[1].is_anchor);
  // A single common evaluation point at the midpoint 1/6250.
  BigComplex mid = BigComplex::from_rational(Rational(1, 6250), p);
  CHECK(d((wps[1].location - mid).abs()) < 1e-40);
}

TEST_CASE("waypoints alternate anchors and common points") {
  unsigned p = 60;
  Operator op = quintic();
  auto sing = singular_locations(op, p);
  auto wps = plan_waypoints(BigComplex(0, 0, p), BigComplex(50, 20, p), sing, 0.6, 3.0);
  REQUIRE(wps.size() >= 3);
  CHECK(wps.size() % 2 == 1);
  for (std::size_t i = 0; i < wps.size(); ++i) CHECK(wps[i].is_anchor == (i % 2 == 0));
  for (std::size_t i = 1; i < wps.size(); i += 2) {
    CHECK(d(wps[i].ratio_prev) <= 0.6 + 1e-12);
    CHECK(d(wps[i].ratio_next) <= 0.6 + 1e-12);
  }
}

TEST_CASE("coincident endpoints yield an empty chain") {
  unsigned p = 60;
  std::vector<BigComplex> sing = {BigComplex(0, 0, p)};
  BigComplex z(1, 1, p);
  CHECK(plan_waypoints(z, z, sing).empty());
}

TEST_CASE("initial argument convention is below-axis") {
  unsigned p = 60;
  CHECK(d(initial_arg(BigComplex(1, 0, p))) == 0);
  CHECK(d(initial_arg(BigComplex(-1, 0, p))) == doctest::Approx(-3.14159265358979));
  CHECK(d(initial_arg(BigComplex(0, -1, p))) == doctest::Approx(-3.14159265358979 / 2));
}

TEST_CASE("local radius excludes the point itself") {
  unsigned p = 60;
  std::vector<BigComplex> sing = {BigComplex(0, 0, p), BigComplex(1, 0, p),
                                  BigComplex(3, 0, p)};
  BigFloat r = local_radius(BigComplex(1, 0, p), sing, BigFloat("1e-10", p));
  CHECK(d(r) == doctest::Approx(1.0));
}

TEST_CASE("transition there and back composes to the identity") {
  Operator op = quintic();
  ContinuationConfig cfg;
  auto a = ExpansionPoint::origin();
  auto b = ExpansionPoint::from_rational(Rational(1, 3125));
  auto fwd = connect(op, a, b, cfg);
  auto bwd = connect(op, b, a, cfg);
  CMatrix prod = fwd.m * bwd.m;
  BigFloat err = fwd.error_estimate + bwd.error_estimate;
  CHECK(d(prod.max_diff(CMatrix::identity(4, prod.precision()))) <
        1e3 * (d(err) + 1e-30));
}

TEST_CASE("ladder perturbation leaves the transition unchanged") {
  Operator op = quintic();
  auto a = ExpansionPoint::origin();
  auto b = ExpansionPoint::from_rational(Rational(1, 3125));
  ContinuationConfig c1, c2;
  c2.ladder = 2.2;
  c2.ratio_cap = 0.5;
  auto t1 = connect(op, a, b, c1);
  auto t2 = connect(op, a, b, c2);
  CHECK(d(t1.m.max_diff(t2.m)) <
        1e3 * (d(t1.error_estimate) + d(t2.error_estimate) + 1e-30));
}

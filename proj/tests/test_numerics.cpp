// SPDX-License-Identifier: Apache-2.0
#include "pfm/cmatrix.hpp"
#include "pfm/constants.hpp"
#include "pfm/rationalize.hpp"
#include "pfm/scaled.hpp"

#include "doctest.h"

using namespace pfm;

namespace {
double d(const BigFloat& x) { return x.convert_to<double>(); }
}  // namespace

TEST_CASE("constants at working precision") {
  Constants c = compute_constants(60);
  CHECK(d(c.pi) == doctest::Approx(3.14159265358979).epsilon(1e-12));
  CHECK(d(c.zeta3) == doctest::Approx(1.20205690315959).epsilon(1e-12));
  CHECK(d(c.two_pi_i.real()) == 0);
  // The unit zeta(3)/(2 pi i)^3 is purely imaginary with positive imag part.
  CHECK(d(c.unit.real()) == 0);
  CHECK(d(c.unit.imag()) > 0);
  CHECK(d(c.unit.imag()) ==
        doctest::Approx(1.20205690315959 / (8 * 3.14159265358979 * 3.14159265358979 *
                                            3.14159265358979))
            .epsilon(1e-12));
}

TEST_CASE("complex exp/log round trip and branch conventions") {
  unsigned p = 60;
  BigComplex z(BigFloat("0.7", p), BigFloat("-1.3", p), p);
  CHECK(d((cexp(clog(z)) - z).abs()) < 1e-55);
  CHECK(d(principal_arg(BigComplex(-1, 0, p))) == doctest::Approx(-3.14159265358979));
  CHECK(d(principal_arg(BigComplex(0, 1, p))) == doctest::Approx(3.14159265358979 / 2));
  // A non-principal branch record shifts the log by 2 pi i.
  BigComplex l0 = clog_with_arg(BigComplex(1, 0, p), BigFloat(0, p));
  Constants c = compute_constants(p);
  BigComplex l1 = clog_with_arg(BigComplex(1, 0, p), 2 * c.pi);
  CHECK(d((l1 - l0 - c.two_pi_i).abs()) < 1e-55);
}

TEST_CASE("continued-fraction rationalization") {
  unsigned p = 60;
  BigFloat x = BigFloat(22, p) / BigFloat(7, p);
  CHECK(rationalize(x, BigInt(100), BigFloat("1e-50")) == Rational(22, 7));
  Constants c = compute_constants(p);
  CHECK_THROWS_AS(rationalize(c.pi, BigInt(10), BigFloat("1e-30")), NoRationalFound);
  GaussianRational g =
      rationalize(BigComplex(BigFloat("0.5", p), BigFloat("1e-40", p), p),
                  BigInt(100), BigFloat("1e-20"));
  CHECK(g == GaussianRational{Rational(1, 2), Rational(0)});
}

TEST_CASE("scale ring arithmetic mod u^3") {
  ScaledRational u = ScaledRational::unit();
  CHECK((u * u * u).is_zero());
  ScaledRational a(Rational(2), Rational(-3), Rational(1, 2));
  CHECK(a * a.inverse() == ScaledRational(1));
  CHECK(ScaledRational::parse(a.str()) == a);
  CHECK_FALSE(a.is_rational());
  CHECK(a.rational_part() == 2);
  Constants c = compute_constants(60);
  BigComplex z = a.to_complex(c);
  // c0 is the real part; the odd powers of u are imaginary, u^2 real again.
  CHECK(d(z.real()) == doctest::Approx(2 + d(c.unit.imag()) * d(c.unit.imag()) * -0.5));
  CHECK(d(z.imag()) == doctest::Approx(-3 * d(c.unit.imag())));
}

TEST_CASE("floating matrix inverse, solve, charpoly") {
  unsigned p = 60;
  CMatrix m(3, 3, p);
  long vals[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = BigComplex(vals[i][j], 0, p);
  CHECK(d((m * m.inverse() - CMatrix::identity(3, p)).max_norm()) < 1e-55);
  CMatrix rhs = CMatrix::identity(3, p);
  CHECK(d((m * m.solve(rhs) - rhs).max_norm()) < 1e-55);
  auto cp = m.charpoly();  // det(xI - A) = x^3 - 9x^2 + 21x - 12
  REQUIRE(cp.size() == 4);
  CHECK(d((cp[0] - BigComplex(-12, 0, p)).abs()) < 1e-50);
  CHECK(d((cp[1] - BigComplex(21, 0, p)).abs()) < 1e-50);
  CHECK(d((cp[2] - BigComplex(-9, 0, p)).abs()) < 1e-50);
}

TEST_CASE("polynomial roots") {
  unsigned p = 60;
  // (x - 2)(x - 3)(x + 1) = x^3 - 4x^2 + x + 6
  std::vector<BigComplex> c = {BigComplex(6, 0, p), BigComplex(1, 0, p),
                               BigComplex(-4, 0, p), BigComplex(1, 0, p)};
  auto roots = poly_roots(c, p);
  REQUIRE(roots.size() == 3);
  BigFloat best(10, p);
  for (const auto& r : roots) {
    BigFloat e = (r - BigComplex(2, 0, p)).abs();
    if (e < best) best = e;
  }
  CHECK(d(best) < 1e-50);
}

TEST_CASE("exact matrix algebra and serialization") {
  ExactMatrix m(2, 2);
  m.at(0, 0) = ScaledRational(1);
  m.at(0, 1) = ScaledRational(0, Rational(-200), 0);  // c3 * u style entry
  m.at(1, 0) = ScaledRational(Rational(5, 2));
  m.at(1, 1) = ScaledRational(1);
  CHECK(m * m.inverse() == ExactMatrix::identity(2));
  CHECK(m.pow(-2) == (m * m).inverse());
  CHECK(m.det() == ScaledRational(1) - ScaledRational(0, Rational(-500), 0));
  CHECK(parse_exact_matrix(render_exact_matrix(m)) == m);
  auto cp = m.charpoly();
  CHECK(cp.coeff(2) == ScaledRational(1));
  CHECK(cp.coeff(1) == ScaledRational(-2));
  CHECK(cp.coeff(0) == m.det());
}

TEST_CASE("snap_matrix recovers exact entries from floats") {
  Constants c = compute_constants(60);
  ExactMatrix m(2, 2);
  m.at(0, 0) = ScaledRational(Rational(-13, 7));
  m.at(0, 1) = ScaledRational(0, Rational(98), 0);
  m.at(1, 0) = ScaledRational(Rational(1, 3));
  m.at(1, 1) = ScaledRational(Rational(15));
  ExactMatrix back =
      snap_matrix(to_complex_rows(m, c), c, BigInt(1000), BigFloat("1e-30"));
  CHECK(back == m);
}

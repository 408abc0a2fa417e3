// SPDX-License-Identifier: Apache-2.0
#include "pfm/analysis.hpp"
#include "pfm/catalog.hpp"

#include "doctest.h"

using namespace pfm;

namespace {
ExactMatrix mk4(const std::vector<std::string>& e) {
  ExactMatrix m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = ScaledRational::parse(e[4 * i + j]);
  return m;
}
}  // namespace

TEST_CASE("closed raw loop pair and invariant extraction round trip") {
  Invariants inv{5, 50, -200};
  auto [t0, tc] = theorem1_pair(inv);
  Constants con = compute_constants(60);
  Invariants back = extract_invariants(to_complex_rows(tc, con), con);
  CHECK(back == inv);
  // T0 is the factorial band in the normalized basis.
  CHECK(t0.at(0, 0) == ScaledRational(1));
  CHECK(t0.at(0, 3) == ScaledRational(Rational(1, 6)));
  CHECK(t0.at(2, 1) == ScaledRational(0));
  // Tc is unipotent of rank one.
  ExactMatrix n = tc - ExactMatrix::identity(4);
  CHECK(n * n == ExactMatrix(4, 4));
}

TEST_CASE("conjugation into the integral symplectic basis") {
  Invariants inv{5, 50, -200};
  auto [t0, tc] = theorem1_pair(inv);
  auto nice = cy_conjugate({t0, tc}, inv);
  REQUIRE(nice.size() == 2);
  CHECK(nice[0] == mk4({"1", "1", "0", "0", "0", "1", "0", "0",
                        "5", "5", "1", "0", "0", "-5", "-1", "1"}));
  CHECK(nice[1] == omitted_generator());
  for (const auto& g : nice) CHECK(symplectic_check(g));
}

TEST_CASE("alternative integral form and its characteristic polynomial") {
  Invariants inv{5, 50, -200};
  auto [t0, tc] = theorem1_pair(inv);
  auto dm = dm_conjugate({t0, tc}, inv);
  REQUIRE(dm.size() == 2);
  CHECK(dm[0] == mk4({"1", "1", "0", "0", "0", "1", "5", "0",
                      "0", "0", "1", "1", "0", "0", "0", "1"}));
  CHECK(dm[1] == mk4({"1", "0", "0", "0", "-5", "1", "0", "0",
                      "-1", "0", "1", "0", "-1", "0", "0", "1"}));
  CHECK(dm_charpoly_check(tc * t0, inv));
}

TEST_CASE("vanishing cycle spans the rank one direction") {
  Invariants inv{5, 50, -200};
  auto tc = theorem1_pair(inv).second;
  auto v = vanishing_cycle(tc);
  REQUIRE(v.size() == 4);
  CHECK(v[1] == ScaledRational(0));
  // Every row of Tc - I is a multiple of v.
  ExactMatrix n = tc - ExactMatrix::identity(4);
  int pivot = -1;
  for (int j = 3; j >= 0; --j)
    if (!v[j].is_zero()) pivot = j;
  REQUIRE(pivot >= 0);
  for (int i = 0; i < 4; ++i) {
    ScaledRational f = n.at(i, pivot) / v[pivot];
    for (int j = 0; j < 4; ++j) CHECK(n.at(i, j) == f * v[j]);
  }
}

TEST_CASE("congruence level detection and membership") {
  ExactMatrix t0 = mk4({"1", "1", "0", "0", "0", "1", "0", "0",
                        "5", "5", "1", "0", "0", "-5", "-1", "1"});
  CongruenceLevel lvl = congruence_level({t0, omitted_generator()});
  CHECK(lvl.d1 == 5);
  CHECK(lvl.d2 == 5);
  CHECK_FALSE(lvl.three_parameter);
  CHECK(in_congruence_level(t0, lvl));
  CHECK(implicit_congruence_check(t0, lvl));
  CHECK_FALSE(in_congruence_level(t0, CongruenceLevel{10, 5, 1, false}));
}

TEST_CASE("implicit congruences weaken with the denominator slot") {
  // A generator whose (1,3) entry has denominator d3 = d1 only satisfies
  // the cross-slot congruences modulo d1/d3.
  ExactMatrix g = mk4({"7", "-1", "-1/6", "1", "-6", "1", "0", "-2",
                       "126", "-18", "-2", "24", "-36", "6", "1", "-5"});
  CHECK(symplectic_check(g));
  CHECK(implicit_congruence_check(g, CongruenceLevel{6, 3, 6, true}));
  CHECK_FALSE(implicit_congruence_check(g, CongruenceLevel{6, 3, 1, false}));
  CHECK(in_congruence_level(g, CongruenceLevel{6, 3, 6, true}));
}

TEST_CASE("group index and symplectic group order") {
  CHECK(group_index(CongruenceLevel{1, 1, 1, false}) == 1);
  CHECK(group_index(CongruenceLevel{2, 2, 1, false}) == 45);
  CHECK(group_index(CongruenceLevel{5, 5, 1, false}) == 14976);
  CHECK(group_index(CongruenceLevel{6, 3, 1, false}) == 9600);
  CHECK(sp4_mod_order(1) == 1);
  CHECK(sp4_mod_order(2) == 720);
  CHECK(sp4_mod_order(3) == 51840);
}

TEST_CASE("raw loops that are not in raw form are rejected") {
  CMatrix m = CMatrix::identity(4, 60);
  Constants con = compute_constants(60);
  CHECK_THROWS_AS(extract_invariants(m, con), NotRawForm);
}

TEST_CASE("order five closed forms satisfy the exact charpoly targets") {
  struct Row {
    Rational A, B;
    std::vector<long> target;  // charpoly of Tc * T0, low to high degree
  };
  std::vector<Row> rows = {
      {{1, 2}, {1, 2}, {1, 5, 10, 10, 5, 1}},
      {{1, 2}, {1, 4}, {1, 3, 4, 4, 3, 1}},
      {{1, 4}, {1, 6}, {1, 0, 1, 1, 0, 1}},
      {{1, 3}, {1, 4}, {1, 2, 3, 3, 2, 1}},
      {{1, 3}, {1, 6}, {1, 1, 1, 1, 1, 1}},
      {{1, 8}, {3, 8}, {1, 1, 0, 0, 1, 1}},
  };
  for (const auto& r : rows) {
    auto [t0, tc] = theorem3_pair(r.A, r.B);
    auto cp = (tc * t0).charpoly();
    for (int k = 0; k <= 5; ++k) CHECK(cp.coeff(k) == ScaledRational(r.target[k]));
    // Parameters recovered from the entries obey a^2 + b c / 2 = 1.
    Rational a2 = tc.at(0, 0).rational_part();
    Rational c2 = -2 * tc.at(4, 0).rational_part();
    Rational ab = -tc.at(0, 2).rational_part();
    Rational ac = -tc.at(2, 0).rational_part();
    CHECK(ac * ac == a2 * c2);
    Rational bc = ab * ac / a2;
    CHECK(a2 + bc / 2 == 1);
    // b^2 slot consistent with the recovered product values.
    Rational b2 = -2 * tc.at(0, 4).rational_part();
    CHECK(ab * ab == a2 * b2);
    auto p = theorem3_parameters(r.A, r.B);
    CHECK(p.a2 == a2);
    CHECK(p.c2 == c2);
  }
}

TEST_CASE("conjugate then snap recovers exact generators") {
  Constants con = compute_constants(60);
  Invariants inv{5, 50, -200};
  auto tc = theorem1_pair(inv).second;
  auto rows = to_complex_rows(tc, con);
  CMatrix m(4, 4, 60);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = rows[i][j];
  ExactMatrix g =
      conjugate_and_snap(m, cy_conjugator(inv), con, BigInt(1000), BigFloat("1e-30"));
  CHECK(g == omitted_generator());
}

// SPDX-License-Identifier: Apache-2.0
#include "pfm/catalog.hpp"

#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pfm;

TEST_CASE("catalog contents") {
  auto ids = catalog_ids();
  CHECK(ids.size() == 48);
  auto has = [&](int id) { return std::find(ids.begin(), ids.end(), id) != ids.end(); };
  for (int id = 1; id <= 14; ++id) CHECK(has(id));
  CHECK(has(17));
  CHECK(has(27));
  for (int id = 201; id <= 206; ++id) CHECK(has(id));
  CHECK_THROWS_AS(catalog_case(999), UnknownCase);
}

TEST_CASE("hypergeometric fixture fields") {
  const CaseRecord& rec = catalog_case(1);
  CHECK(rec.order == 4);
  CHECK(rec.A == Rational(1, 5));
  CHECK(rec.B == Rational(2, 5));
  CHECK(rec.C == Rational(3125));
  REQUIRE(rec.invariants.has_value());
  CHECK(rec.invariants->d == 5);
  CHECK(rec.invariants->c2H == 50);
  CHECK(rec.invariants->c3 == -200);
  REQUIRE(rec.level.has_value());
  CHECK(rec.level->d1 == 5);
  CHECK(rec.level->d2 == 5);
  REQUIRE(rec.op.has_value());
  CHECK(*rec.op == from_hypergeometric4(Rational(1, 5), Rational(2, 5), Rational(3125)));
}

TEST_CASE("data anomaly flags") {
  CHECK(catalog_case(27).c3_sign_note);
  CHECK(catalog_case(17).level_note);
  CHECK(catalog_case(19).level_note);
  CHECK(catalog_case(73).pattern_note);
  CHECK_FALSE(catalog_case(1).c3_sign_note);
}

TEST_CASE("record JSON round trip for every fixture") {
  for (int id : catalog_ids()) {
    const CaseRecord& rec = catalog_case(id);
    CaseRecord back = parse_case(render_case(rec));
    CHECK(back.id == rec.id);
    CHECK(back.order == rec.order);
    CHECK(back.op == rec.op);
    CHECK(back.invariants == rec.invariants);
    CHECK(back.level == rec.level);
    CHECK(back.generators == rec.generators);
    CHECK(back.c3_sign_note == rec.c3_sign_note);
    CHECK(back.level_note == rec.level_note);
    CHECK(back.pattern_note == rec.pattern_note);
    // Canonical rendering is stable.
    CHECK(render_case(back) == render_case(rec));
  }
}

TEST_CASE("fixture export writes one file per case") {
  auto dir = std::filesystem::temp_directory_path() / "pfm_catalog_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  export_catalog(dir.string());
  std::size_t n = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    ++n;
    (void)e;
  }
  CHECK(n == catalog_ids().size());
  std::ifstream in(dir / "case_1.json");
  std::stringstream ss;
  ss << in.rdbuf();
  CaseRecord rec = parse_case(ss.str());
  CHECK(rec.id == 1);
  CHECK(rec.invariants->d == 5);
  std::filesystem::remove_all(dir);
}

TEST_CASE("exact verification of a matrices-only fixture") {
  ContinuationConfig cfg;
  VerifyReport rep = verify_case(15, cfg);
  CHECK_FALSE(rep.ran_pipeline);
  CHECK(rep.passed());
}

TEST_CASE("pipeline verification of the first hypergeometric fixture") {
  ContinuationConfig cfg;
  VerifyReport rep = verify_case(1, cfg);
  CHECK(rep.ran_pipeline);
  for (const auto& c : rep.checks) {
    INFO(c.name << " " << c.note);
    CHECK(c.pass);
  }
}

TEST_CASE("the ever-present generator is symplectic and unipotent") {
  ExactMatrix g = omitted_generator();
  CHECK(symplectic_check(g));
  ExactMatrix n = g - ExactMatrix::identity(4);
  CHECK(n * n == ExactMatrix(4, 4));
}

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pfm/analysis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pfm {

struct UnknownCase : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invariants proved in the source literature versus read off numerically
// from a conifold loop.
enum class Provenance { Proved, Conjectural };

// One fixture: an operator (when a source is printed), its invariants,
// the published level, and the published generator matrices. The generator
// [[1,0,0,0],[0,1,0,1],[0,0,1,0],[0,0,0,1]] is always in the group and is
// not stored.
struct CaseRecord {
  int id = 0;
  int order = 4;
  std::string description;  // geometric identifier, may be empty
  std::string reference;    // citation keys, may be empty
  Provenance provenance = Provenance::Conjectural;

  std::optional<Operator> op;
  // Hypergeometric data when the operator is of that shape.
  std::optional<Rational> A, B, C;

  std::optional<Invariants> invariants;     // c3 as printed
  std::optional<CongruenceLevel> level;     // as printed
  std::vector<ExactMatrix> generators;      // printed matrices

  // Data notes, kept as flags so tests can treat the quirks as advisory.
  bool c3_sign_note = false;   // printed c3 positive against the family trend
  bool level_note = false;     // gcd detection disagrees with the printed level
  bool pattern_note = false;   // a printed generator violates the level pattern
};

std::vector<int> catalog_ids();
const CaseRecord& catalog_case(int id);

// The group element omitted from every published table.
ExactMatrix omitted_generator();

// JSON round trip for records; export writes case_<id>.json per id into
// the directory.
std::string render_case(const CaseRecord& rec);
CaseRecord parse_case(const std::string& json_text);
void export_catalog(const std::string& directory);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string note;
};

struct VerifyReport {
  int id = 0;
  bool ran_pipeline = false;        // an operator source was available
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool passed() const;
};

// End-to-end verification of one fixture. With an operator: recompute the
// generators, extract invariants, carry them to the integral basis, and
// compare against every recorded expectation (printed matrices match up to
// inverse, which is noted). Without one: exact checks on the printed data.
VerifyReport verify_case(int id, const ContinuationConfig& cfg);
VerifyReport verify_case(const CaseRecord& rec, const ContinuationConfig& cfg);

}  // namespace pfm

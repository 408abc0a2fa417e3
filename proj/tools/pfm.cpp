// SPDX-License-Identifier: Apache-2.0
#include "pfm/catalog.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace pfm;
using nlohmann::json;

constexpr int kExitParse = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitNotRawForm = 4;

struct GlobalOptions {
  unsigned precision = 60;
  int terms = 80;
  std::string tol = "1e-20";
  int max_terms = 6000;
  unsigned max_precision = 700;
  double ratio_cap = 0.6;
  double ladder = 3.0;
  std::string max_den = "1000000";
  bool json_out = false;
  int jobs = 1;
};

ContinuationConfig to_config(const GlobalOptions& g) {
  ContinuationConfig cfg;
  cfg.precision = g.precision;
  cfg.terms = g.terms;
  cfg.tol = BigFloat(g.tol);
  cfg.max_terms = g.max_terms;
  cfg.max_precision = g.max_precision;
  cfg.ratio_cap = g.ratio_cap;
  cfg.ladder = g.ladder;
  return cfg;
}

Operator load_operator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_operator(ss.str());
}

std::string complex_str(const BigComplex& z, unsigned digits) {
  return z.str(digits);
}

json matrix_json(const CMatrix& m, unsigned digits) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m.at(i, j).real().str(digits),
                                 m.at(i, j).imag().str(digits)}));
    rows.push_back(row);
  }
  return rows;
}

json matrix_json(const ExactMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

void print_matrix(const CMatrix& m, unsigned digits) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::cout << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j)
      std::cout << (j ? ", " : " ") << complex_str(m.at(i, j), digits);
    std::cout << " ]\n";
  }
}

void print_matrix(const ExactMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::cout << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j)
      std::cout << (j ? ", " : " ") << m.at(i, j).str();
    std::cout << " ]\n";
  }
}

const char* class_name(PointClass c) {
  switch (c) {
    case PointClass::MaximallyUnipotent: return "maximally-unipotent";
    case PointClass::Conifold: return "conifold";
    case PointClass::ApparentCandidate: return "apparent-candidate";
    default: return "general";
  }
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "not-checked";
  }
}

int cmd_analyze(const std::string& file, const GlobalOptions& g) {
  Operator op = load_operator(file);
  auto pts = singular_points(op, g.precision);
  auto cy = cy_type_check(op, std::max(g.terms, 50));
  if (g.json_out) {
    json out;
    out["order"] = op.order;
    out["singularities"] = json::array();
    for (const auto& p : pts) {
      json s;
      s["at_infinity"] = p.at_infinity;
      if (!p.at_infinity)
        s["location"] = p.exact ? render_rational(p.location_exact.re) +
                                      (p.location_exact.im == 0
                                           ? ""
                                           : "+" + render_rational(p.location_exact.im) + "i")
                                : complex_str(p.location, 20);
      s["exact"] = p.exact;
      json ex = json::array();
      for (const auto& e : p.exponents) ex.push_back(render_rational(e));
      s["exponents"] = ex;
      s["regular_singular"] = p.regular_singular;
      s["class"] = class_name(p.classification);
      out["singularities"].push_back(s);
    }
    json c;
    c["a_regular"] = verdict_name(cy.a);
    c["b_mum_origin"] = verdict_name(cy.b);
    c["c_conifold"] = verdict_name(cy.c);
    c["d_integrality"] = verdict_name(cy.d);
    c["e_infinity"] = verdict_name(cy.e);
    c["f_coefficient_identity"] = verdict_name(cy.f);
    c["passed"] = cy.passed();
    if (!cy.witness.empty()) c["witness"] = cy.witness;
    out["cy_type"] = c;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "operator of order " << op.order << ", " << pts.size()
            << " singular points\n";
  for (const auto& p : pts) {
    std::cout << "  ";
    if (p.at_infinity)
      std::cout << "infinity";
    else if (p.exact && p.location_exact.im == 0)
      std::cout << render_rational(p.location_exact.re);
    else
      std::cout << complex_str(p.location, 12);
    std::cout << "  exponents [";
    for (std::size_t i = 0; i < p.exponents.size(); ++i)
      std::cout << (i ? ", " : "") << render_rational(p.exponents[i]);
    std::cout << "]  " << (p.regular_singular ? "regular" : "irregular") << "  "
              << class_name(p.classification) << "\n";
  }
  std::cout << "calabi-yau type conditions: a=" << verdict_name(cy.a)
            << " b=" << verdict_name(cy.b) << " c=" << verdict_name(cy.c)
            << " d=" << verdict_name(cy.d) << " e=" << verdict_name(cy.e)
            << " f=" << verdict_name(cy.f) << "  ("
            << (cy.passed() ? "passed" : "failed") << ")\n";
  if (!cy.witness.empty()) std::cout << "witness: " << cy.witness << "\n";
  return 0;
}

// Low-budget replication: one fixed-truncation hop against the closed form.
int point_report(const Operator& op, const Rational& common, const GlobalOptions& g) {
  Constants con = compute_constants(g.precision);
  auto pts = singular_points(op, g.precision);
  std::optional<Rational> target;
  for (const auto& p : pts) {
    if (p.at_infinity || !p.exact || p.location_exact.im != 0) continue;
    if (p.location_exact.re == 0) continue;
    if (!target || abs(p.location_exact.re) < abs(*target)) target = p.location_exact.re;
  }
  if (!target) throw NotRawForm("no finite rational singular point to loop around");
  CMatrix t = fixed_truncation_loop(op, *target, common, g.terms, g.precision);
  Invariants inv = extract_invariants(t, con, BigFloat("1e-2"));
  auto closed = to_complex_rows(theorem1_pair(inv, op.order).second, con);
  BigFloat maxrel(0);
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) {
      BigFloat denom = closed[i][j].abs();
      if (denom.is_zero()) denom = BigFloat(1);
      BigFloat rel = (t.at(i, j) - closed[i][j]).abs() / denom;
      if (rel > maxrel) maxrel = rel;
    }
  int digits = maxrel.is_zero()
                   ? static_cast<int>(g.precision)
                   : static_cast<int>(-log10(maxrel).convert_to<double>());
  if (g.json_out) {
    json out;
    out["target"] = render_rational(*target);
    out["common_point"] = render_rational(common);
    out["terms"] = g.terms;
    out["invariants"] = {{"H3", inv.d.str()}, {"c2H", inv.c2H.str()}, {"c3", inv.c3.str()}};
    out["max_relative_error"] = maxrel.str(5);
    out["agreement_digits"] = digits;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "loop around " << render_rational(*target) << " via common point "
              << render_rational(common) << " with " << g.terms << " terms\n";
    std::cout << "invariants (" << inv.d << ", " << inv.c2H << ", " << inv.c3 << ")\n";
    std::cout << "agreement with the closed form: " << digits
              << " significant digits (max relative error " << maxrel.str(5) << ")\n";
  }
  return 0;
}

int cmd_monodromy(const std::string& file, const std::string& point,
                  const GlobalOptions& g) {
  Operator op = load_operator(file);
  if (!point.empty()) return point_report(op, parse_rational(point), g);

  ContinuationConfig cfg = to_config(g);
  Constants con = compute_constants(g.precision);
  GeneratorSet gen = monodromy_generators(op, cfg);

  json out;
  out["order"] = op.order;
  if (!g.json_out) std::cout << "loop matrices in the normalized origin basis\n";
  json loops = json::array();
  for (std::size_t i = 0; i < gen.points.size(); ++i) {
    std::string loc = gen.points[i].exact && gen.points[i].location_exact.im == 0
                          ? render_rational(gen.points[i].location_exact.re)
                          : complex_str(gen.points[i].location, 12);
    if (g.json_out) {
      json l;
      l["location"] = loc;
      l["class"] = class_name(gen.points[i].classification);
      l["identity"] = gen.loops[i].is_identity;
      l["error_estimate"] = gen.loops[i].error.str(5);
      l["matrix"] = matrix_json(gen.loops[i].t, 25);
      loops.push_back(l);
    } else {
      std::cout << "loop around " << loc << " (" << class_name(gen.points[i].classification)
                << (gen.loops[i].is_identity ? ", identity" : "") << ")\n";
      if (!gen.loops[i].is_identity) print_matrix(gen.loops[i].t, 12);
    }
  }
  out["loops"] = loops;

  if (op.order != 4) {
    if (g.json_out) std::cout << out.dump(2) << "\n";
    return 0;
  }

  // invariants off the conifold loop nearest the origin
  std::optional<Invariants> inv;
  std::vector<std::size_t> order_idx;
  for (std::size_t i = 0; i < gen.points.size(); ++i)
    if (!gen.loops[i].is_identity &&
        gen.points[i].classification == PointClass::Conifold)
      order_idx.push_back(i);
  std::sort(order_idx.begin(), order_idx.end(), [&](std::size_t a, std::size_t b) {
    return gen.points[a].location.abs() < gen.points[b].location.abs();
  });
  for (std::size_t i : order_idx) {
    try {
      inv = extract_invariants(gen.loops[i].t, con);
      break;
    } catch (const std::exception&) {
    }
  }
  if (!inv) throw NotRawForm("no conifold loop matches the raw closed form");
  ExactMatrix s = cy_conjugator(*inv);
  std::vector<ExactMatrix> nice;
  for (std::size_t i = 0; i < gen.points.size(); ++i) {
    if (gen.loops[i].is_identity) continue;
    nice.push_back(conjugate_and_snap(gen.loops[i].t, s, con, BigInt(g.max_den),
                                      BigFloat("1e-12")));
  }
  std::vector<ExactMatrix> for_level;
  for (const auto& m : nice)
    if (!(m == omitted_generator()) && !m.is_identity()) for_level.push_back(m);
  CongruenceLevel lvl = congruence_level(for_level);
  std::optional<BigInt> index;
  if (!lvl.three_parameter && lvl.d1 > 0 && lvl.d2 > 0 && lvl.d1 % lvl.d2 == 0)
    index = group_index(lvl);

  if (g.json_out) {
    out["invariants"] = {{"H3", inv->d.str()}, {"c2H", inv->c2H.str()}, {"c3", inv->c3.str()}};
    json gens = json::array();
    for (const auto& m : nice) gens.push_back(matrix_json(m));
    out["generators_integral_basis"] = gens;
    out["level"] = {{"d1", lvl.d1.str()},
                    {"d2", lvl.d2.str()},
                    {"d3", lvl.d3.str()},
                    {"three_parameter", lvl.three_parameter}};
    if (index) out["index"] = index->str();
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << "invariants (H3, c2.H, c3) = (" << inv->d << ", " << inv->c2H << ", "
            << inv->c3 << ")\n";
  std::cout << "generators in the integral symplectic basis\n";
  for (const auto& m : nice) {
    print_matrix(m);
    std::cout << "\n";
  }
  std::cout << "congruence level ";
  if (lvl.three_parameter)
    std::cout << "(" << lvl.d1 << ", " << lvl.d2 << ", " << lvl.d3 << ")\n";
  else
    std::cout << "(" << lvl.d1 << ", " << lvl.d2 << ")\n";
  if (index)
    std::cout << "index in the full integral symplectic group: " << *index << "\n";
  return 0;
}

CaseRecord load_case(int id) {
  const char* dir = std::getenv("PFM_DATA_DIR");
  if (!dir) return catalog_case(id);
  std::ifstream in(std::string(dir) + "/case_" + std::to_string(id) + ".json");
  if (!in) throw UnknownCase("no fixture file for id " + std::to_string(id));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_case(ss.str());
}

void print_report(const VerifyReport& rep) {
  std::cout << "case " << rep.id << (rep.ran_pipeline ? "" : " (data checks only)")
            << ": " << (rep.passed() ? "pass" : "FAIL") << "  ["
            << rep.checks.size() << " checks, " << rep.seconds << "s]\n";
  for (const auto& c : rep.checks) {
    std::cout << "  " << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
    if (!c.note.empty()) std::cout << "  (" << c.note << ")";
    std::cout << "\n";
  }
}

json report_json(const VerifyReport& rep) {
  json r;
  r["id"] = rep.id;
  r["ran_pipeline"] = rep.ran_pipeline;
  r["passed"] = rep.passed();
  r["seconds"] = rep.seconds;
  r["checks"] = json::array();
  for (const auto& c : rep.checks) {
    json ck;
    ck["name"] = c.name;
    ck["pass"] = c.pass;
    if (!c.note.empty()) ck["note"] = c.note;
    r["checks"].push_back(ck);
  }
  return r;
}

int cmd_catalog(const std::string& verify, int dump_id, const std::string& export_dir,
                const GlobalOptions& g) {
  if (!export_dir.empty()) {
    export_catalog(export_dir);
    std::cout << "wrote " << catalog_ids().size() << " fixture files to " << export_dir
              << "\n";
    return 0;
  }
  if (dump_id != 0) {
    std::cout << render_case(load_case(dump_id)) << "\n";
    return 0;
  }
  if (!verify.empty()) {
    ContinuationConfig cfg = to_config(g);
    std::vector<int> ids;
    if (verify == "all")
      ids = catalog_ids();
    else
      ids.push_back(std::stoi(verify));
    std::vector<VerifyReport> reports(ids.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < ids.size(); i = next++)
        reports[i] = verify_case(load_case(ids[i]), cfg);
    };
    int jobs = std::max(1, g.jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    bool all = true;
    if (g.json_out) {
      json out = json::array();
      for (const auto& r : reports) {
        out.push_back(report_json(r));
        all = all && r.passed();
      }
      std::cout << out.dump(2) << "\n";
    } else {
      for (const auto& r : reports) {
        print_report(r);
        all = all && r.passed();
      }
      std::cout << (all ? "all cases passed" : "some cases FAILED") << "\n";
    }
    return all ? 0 : 1;
  }
  // list mode
  json out = json::array();
  for (int id : catalog_ids()) {
    CaseRecord rec = load_case(id);
    if (g.json_out) {
      json r;
      r["id"] = id;
      r["order"] = rec.order;
      r["operator"] = rec.op.has_value();
      if (rec.invariants)
        r["invariants"] = {{"H3", rec.invariants->d.str()},
                           {"c2H", rec.invariants->c2H.str()},
                           {"c3", rec.invariants->c3.str()}};
      if (rec.level)
        r["level"] = {{"d1", rec.level->d1.str()},
                      {"d2", rec.level->d2.str()},
                      {"d3", rec.level->d3.str()}};
      out.push_back(r);
    } else {
      std::cout << "  " << id << "  order " << rec.order << "  "
                << (rec.op ? "operator " : "matrices-only ");
      if (rec.invariants)
        std::cout << "(" << rec.invariants->d << ", " << rec.invariants->c2H << ", "
                  << rec.invariants->c3 << ") ";
      if (rec.level) {
        std::cout << "level (" << rec.level->d1 << ", " << rec.level->d2;
        if (rec.level->three_parameter) std::cout << ", " << rec.level->d3;
        std::cout << ") ";
      }
      if (!rec.description.empty()) std::cout << " " << rec.description;
      std::cout << "\n";
    }
  }
  if (g.json_out) std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_index(const std::string& d1, const std::string& d2, const GlobalOptions& g) {
  CongruenceLevel lvl;
  lvl.d1 = BigInt(d1);
  lvl.d2 = BigInt(d2);
  BigInt idx = group_index(lvl);
  if (g.json_out)
    std::cout << json{{"d1", d1}, {"d2", d2}, {"index", idx.str()}}.dump() << "\n";
  else
    std::cout << idx << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monodromy of fourth and fifth order operators of Calabi-Yau type"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--precision", g.precision, "working decimal digits");
  app.add_option("--terms", g.terms, "initial series truncation");
  app.add_option("--tol", g.tol, "target tolerance for adaptive continuation");
  app.add_option("--max-terms", g.max_terms, "truncation budget");
  app.add_option("--max-precision", g.max_precision, "precision budget");
  app.add_option("--ratio-cap", g.ratio_cap, "largest hop ratio along paths");
  app.add_option("--ladder", g.ladder, "refinement factor between attempts");
  app.add_option("--max-den", g.max_den, "denominator bound for rationalization");
  app.add_flag("--json", g.json_out, "machine readable output");
  app.add_option("--jobs", g.jobs, "parallel verification jobs");

  std::string an_file;
  auto* an = app.add_subcommand("analyze", "singularities, exponents, type conditions");
  an->add_option("file", an_file, "operator JSON file")->required();

  std::string mo_file, mo_point;
  auto* mo = app.add_subcommand("monodromy", "generators, invariants, level, index");
  mo->add_option("file", mo_file, "operator JSON file")->required();
  mo->add_option("--point", mo_point,
                 "fixed-truncation replication via this common evaluation point");

  std::string cat_verify, cat_export;
  int cat_dump = 0;
  auto* ca = app.add_subcommand("catalog", "fixture listing, dump, verification");
  ca->add_option("--verify", cat_verify, "case id or 'all'");
  ca->add_option("--dump", cat_dump, "print one fixture as JSON");
  ca->add_option("--export", cat_export, "write every fixture into a directory");

  std::string ix_d1, ix_d2;
  auto* ix = app.add_subcommand("index", "index of the level subgroup");
  ix->add_option("d1", ix_d1)->required();
  ix->add_option("d2", ix_d2)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (an->parsed()) return cmd_analyze(an_file, g);
    if (mo->parsed()) return cmd_monodromy(mo_file, mo_point, g);
    if (ca->parsed()) return cmd_catalog(cat_verify, cat_dump, cat_export, g);
    if (ix->parsed()) return cmd_index(ix_d1, ix_d2, g);
  } catch (const NotRawForm& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotRawForm;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const PathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return 0;
}

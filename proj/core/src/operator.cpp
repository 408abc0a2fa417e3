// SPDX-License-Identifier: Apache-2.0
#include "pfm/operator.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>

namespace pfm {

namespace mp = boost::multiprecision;
using nlohmann::json;

Operator parse_operator(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad operator JSON: ") + e.what());
  }
  if (!j.contains("order") || !j.contains("theta"))
    throw ParseError("operator JSON needs order and theta");
  Operator op;
  op.order = j["order"].get<int>();
  const auto& th = j["theta"];
  if (!th.is_array() || static_cast<int>(th.size()) != op.order + 1)
    throw ParseError("theta array must have order+1 entries");
  for (const auto& row : th) {
    if (!row.is_array()) throw ParseError("theta coefficients must be arrays");
    std::vector<Rational> c;
    for (const auto& lit : row) {
      if (!lit.is_string()) throw ParseError("coefficient literals must be strings");
      c.push_back(parse_rational(lit.get<std::string>()));
    }
    op.theta.emplace_back(std::move(c));
  }
  if (op.order < 2) throw ParseError("operator order must be at least 2");
  if (op.theta.back().is_zero())
    throw ParseError("leading theta coefficient is identically zero");
  return op;
}

std::string render_operator(const Operator& op) {
  json th = json::array();
  for (const auto& p : op.theta) {
    json row = json::array();
    for (const auto& c : p.coeffs()) row.push_back(render_rational(c));
    th.push_back(std::move(row));
  }
  return json{{"order", op.order}, {"theta", std::move(th)}}.dump();
}

// expands prod (theta + roots[i]) as a polynomial in theta
static RationalPoly linear_product(const std::vector<Rational>& roots) {
  RationalPoly p = RationalPoly::constant(1);
  for (const auto& r : roots) p = p * RationalPoly({r, Rational(1)});
  return p;
}

static Operator hypergeometric(int n, const std::vector<Rational>& shifts,
                               const Rational& C) {
  RationalPoly prod = linear_product(shifts);  // degree n, monic in theta
  Operator op;
  op.order = n;
  op.theta.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    std::vector<Rational> c{Rational(0), -C * prod.coeff(i)};  // -C*e_i * z
    if (i == n) c[0] = 1;
    op.theta[i] = RationalPoly(std::move(c));
  }
  return op;
}

Operator from_hypergeometric4(const Rational& A, const Rational& B, const Rational& C) {
  if (!(A > 0 && A < 1 && B > 0 && B < 1) || C == 0)
    throw std::invalid_argument("hypergeometric parameters out of range");
  return hypergeometric(4, {A, 1 - A, B, 1 - B}, C);
}

Operator from_hypergeometric5(const Rational& A, const Rational& B) {
  if (!(A > 0 && A < 1 && B > 0 && B < 1))
    throw std::invalid_argument("hypergeometric parameters out of range");
  return hypergeometric(5, {Rational(1, 2), A, 1 - A, B, 1 - B}, Rational(1));
}

// Stirling numbers of the second kind up to n
static std::vector<std::vector<Rational>> stirling2(int n) {
  std::vector<std::vector<Rational>> s(n + 1, std::vector<Rational>(n + 1, Rational(0)));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= i; ++k) s[i][k] = s[i - 1][k - 1] + Rational(k) * s[i - 1][k];
  return s;
}

std::vector<RationalPoly> derivative_form(const Operator& op) {
  int n = op.order;
  auto s = stirling2(n);
  std::vector<RationalPoly> q(n + 1);
  for (int k = 0; k <= n; ++k) {
    RationalPoly acc;
    for (int i = k; i <= n; ++i) acc = acc + op.theta[i] * s[i][k];
    q[k] = acc * RationalPoly::monomial(k);
  }
  return q;
}

std::vector<RationalFunction> to_monic_derivative_form(const Operator& op) {
  auto q = derivative_form(op);
  std::vector<RationalFunction> r(op.order);
  for (int k = 0; k < op.order; ++k) r[k] = RationalFunction(q[k], q[op.order]);
  return r;
}

Operator transform_infinity(const Operator& op) {
  std::size_t maxdeg = 0;
  for (const auto& p : op.theta)
    if (!p.is_zero()) maxdeg = std::max<std::size_t>(maxdeg, p.degree());
  Operator out;
  out.order = op.order;
  out.theta.resize(op.order + 1);
  for (int i = 0; i <= op.order; ++i) {
    RationalPoly rev = op.theta[i].reversed(maxdeg);
    out.theta[i] = (i % 2) ? -rev : rev;
  }
  return out;
}

static RationalPoly falling_factorial(int k) {
  RationalPoly p = RationalPoly::constant(1);
  for (int r = 0; r < k; ++r) p = p * RationalPoly({Rational(-r), Rational(1)});
  return p;
}

std::vector<RationalPoly> recurrence_polys(const Operator& op, const Rational& z0) {
  int n = op.order;
  std::vector<RationalPoly> c;  // C_a(lambda)
  if (z0 == 0) {
    std::size_t maxdeg = 0;
    for (const auto& p : op.theta)
      if (!p.is_zero()) maxdeg = std::max<std::size_t>(maxdeg, p.degree());
    c.resize(maxdeg + 1);
    for (std::size_t a = 0; a <= maxdeg; ++a) {
      std::vector<Rational> bc(n + 1, Rational(0));
      for (int i = 0; i <= n; ++i) bc[i] = op.theta[i].coeff(a);
      c[a] = RationalPoly(std::move(bc));
    }
  } else {
    auto q = derivative_form(op);
    std::size_t amax = 0;
    for (int k = 0; k <= n; ++k)
      if (!q[k].is_zero()) amax = std::max<std::size_t>(amax, (n - k) + q[k].degree());
    c.resize(amax + 1);
    for (int k = 0; k <= n; ++k) {
      RationalPoly t = q[k].shifted(z0);
      RationalPoly fall = falling_factorial(k);
      for (long s = 0; s <= t.degree(); ++s) {
        Rational v = t.coeff(s);
        if (v == 0) continue;
        c[n - k + s] = c[n - k + s] + fall * v;
      }
    }
  }
  std::size_t m0 = 0;
  while (m0 < c.size() && c[m0].is_zero()) ++m0;
  if (m0 == c.size()) throw std::domain_error("zero operator in recurrence setup");
  return std::vector<RationalPoly>(c.begin() + m0, c.end());
}

std::vector<RationalPoly> recurrence_polys_infinity(const Operator& op) {
  return recurrence_polys(transform_infinity(op), Rational(0));
}

std::vector<std::vector<BigComplex>> recurrence_polys_numeric(const Operator& op,
                                                              const BigComplex& z0,
                                                              unsigned digits) {
  int n = op.order;
  auto q = derivative_form(op);
  std::size_t amax = 0;
  for (int k = 0; k <= n; ++k)
    if (!q[k].is_zero()) amax = std::max<std::size_t>(amax, (n - k) + q[k].degree());
  std::vector<std::vector<BigComplex>> c(amax + 1);
  BigComplex zero(0, 0, digits);
  auto ensure = [&](std::vector<BigComplex>& v, std::size_t len) {
    while (v.size() < len) v.push_back(zero);
  };
  for (int k = 0; k <= n; ++k) {
    if (q[k].is_zero()) continue;
    // Taylor-shift q[k] to the centre with complex Horner
    std::vector<BigComplex> t{};
    for (long i = q[k].degree(); i >= 0; --i) {
      // t := t*(z0 + x) + coeff
      std::vector<BigComplex> nt(t.size() + 1, zero);
      for (std::size_t s = 0; s < t.size(); ++s) {
        nt[s] += t[s] * z0;
        nt[s + 1] += t[s];
      }
      if (nt.empty()) nt.push_back(zero);
      nt[0] += BigComplex::from_rational(q[k].coeff(i), digits);
      t = std::move(nt);
    }
    RationalPoly fall = falling_factorial(k);
    for (std::size_t s = 0; s < t.size(); ++s) {
      if (t[s].is_zero()) continue;
      std::size_t a = n - k + s;
      ensure(c[a], fall.degree() + 1);
      for (long d = 0; d <= fall.degree(); ++d)
        c[a][d] += t[s] * BigComplex::from_rational(fall.coeff(d), digits);
    }
  }
  // strip numerically-zero leading groups
  BigFloat scale = make_float(digits);
  for (const auto& v : c)
    for (const auto& e : v) {
      BigFloat a = e.abs();
      if (a > scale) scale = a;
    }
  BigFloat tol = scale * mp::pow(BigFloat(10, digits), -static_cast<long>(digits) + 8);
  auto vanishes = [&](const std::vector<BigComplex>& v) {
    for (const auto& e : v)
      if (e.abs() > tol) return false;
    return true;
  };
  std::size_t m0 = 0;
  while (m0 < c.size() && vanishes(c[m0])) ++m0;
  if (m0 == c.size()) throw std::domain_error("zero operator in recurrence setup");
  std::vector<std::vector<BigComplex>> out(c.begin() + m0, c.end());
  // trim numeric trailing zeros per polynomial
  for (auto& v : out)
    while (!v.empty() && v.back().abs() <= tol) v.pop_back();
  return out;
}

// verified rational roots with multiplicity; deflates them out of p
static std::vector<std::pair<Rational, int>> rational_roots(RationalPoly& p,
                                                            const BigInt& max_den,
                                                            unsigned digits) {
  std::vector<std::pair<Rational, int>> out;
  if (p.degree() < 1) return out;
  // multiple roots cripple the root finder; hunt on the squarefree part
  RationalPoly sf = p;
  {
    RationalPoly g = poly_gcd(p, p.derivative());
    if (g.degree() > 0) sf = poly_divexact(p, g);
  }
  std::vector<BigComplex> cc;
  for (const auto& v : sf.coeffs()) cc.push_back(BigComplex::from_rational(v, digits));
  BigFloat tol = mp::pow(BigFloat(10, digits), -static_cast<long>(digits) / 2);
  std::vector<Rational> candidates;
  for (const auto& r : poly_roots(cc, digits)) {
    if (mp::abs(r.imag()) > tol) continue;
    try {
      Rational q = rationalize(r.real(), max_den, tol);
      if (std::find(candidates.begin(), candidates.end(), q) == candidates.end())
        candidates.push_back(q);
    } catch (const NoRationalFound&) {
    }
  }
  for (const auto& q : candidates) {
    int m = root_multiplicity(p, q);
    if (m == 0) continue;
    out.emplace_back(q, m);
    RationalPoly lin({-q, Rational(1)});
    for (int i = 0; i < m; ++i) p = poly_divexact(p, lin);
  }
  return out;
}

static IndicialData exponents_from_rational_poly(const RationalPoly& b0, int order) {
  RationalPoly p = b0;
  IndicialData d;
  d.regular_singular = (b0.degree() == order);
  auto roots = rational_roots(p, BigInt(60), 50);
  if (p.degree() > 0)
    throw ExponentError("indicial root not recognizably rational");
  for (const auto& [q, m] : roots)
    for (int i = 0; i < m; ++i) d.exponents.push_back(q);
  std::sort(d.exponents.begin(), d.exponents.end());
  return d;
}

IndicialData indicial_exponents(const Operator& op, const Rational& z0) {
  return exponents_from_rational_poly(recurrence_polys(op, z0)[0], op.order);
}

IndicialData indicial_exponents_infinity(const Operator& op) {
  return exponents_from_rational_poly(recurrence_polys_infinity(op)[0], op.order);
}

BigComplex refine_singular_location(const Operator& op, const BigComplex& z0,
                                    unsigned digits) {
  RationalPoly pn = op.theta[op.order];
  RationalPoly sf = poly_divexact(pn, poly_gcd(pn, pn.derivative()));
  RationalPoly sfd = sf.derivative();
  BigComplex z(z0.real(), z0.imag(), digits);
  BigFloat stop = mp::pow(BigFloat(10, digits), -static_cast<long>(digits) + 4);
  BigFloat scale = z.abs();
  if (scale == 0) return z;
  auto eval = [&](const RationalPoly& p, const BigComplex& x) {
    BigComplex acc(0, 0, digits);
    for (long i = p.degree(); i >= 0; --i)
      acc = acc * x + BigComplex::from_rational(p.coeff(static_cast<std::size_t>(i)), digits);
    return acc;
  };
  for (int it = 0; it < 200; ++it) {
    BigComplex num = eval(sf, z), den = eval(sfd, z);
    if (den.is_zero()) break;
    BigComplex step = num / den;
    z = z - step;
    if (step.abs() <= stop * scale) break;
  }
  return z;
}

IndicialData indicial_exponents_numeric(const Operator& op, const BigComplex& z0,
                                        unsigned digits) {
  auto b = recurrence_polys_numeric(op, z0, digits);
  const auto& b0 = b[0];
  IndicialData d;
  d.regular_singular = (static_cast<int>(b0.size()) == op.order + 1);
  BigFloat tol = mp::pow(BigFloat(10, digits), -static_cast<long>(digits) / 3);
  auto roots = poly_roots(b0, digits);
  std::map<Rational, int> found;
  for (const auto& r : roots) {
    if (mp::abs(r.imag()) > tol)
      throw ExponentError("indicial root not recognizably rational");
    try {
      Rational q = rationalize(r.real(), BigInt(60), tol);
      found[q] += 1;
    } catch (const NoRationalFound&) {
      throw ExponentError("indicial root not recognizably rational");
    }
  }
  for (const auto& [q, m] : found)
    for (int i = 0; i < m; ++i) d.exponents.push_back(q);
  std::sort(d.exponents.begin(), d.exponents.end());
  return d;
}

PointClass classify_exponents(int order, const std::vector<Rational>& exps) {
  bool all_zero = true;
  for (const auto& e : exps) all_zero = all_zero && e == 0;
  if (all_zero && static_cast<int>(exps.size()) == order)
    return PointClass::MaximallyUnipotent;
  if (order == 4 && exps.size() == 4) {
    std::vector<Rational> s = exps;
    std::sort(s.begin(), s.end());
    if (s[0] == 0 && s[1] == 1 && s[2] == 1 && s[3] == 2) return PointClass::Conifold;
  }
  bool distinct_nonneg_int = true;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (!is_nonneg_integer(exps[i])) distinct_nonneg_int = false;
    for (std::size_t j = i + 1; j < exps.size(); ++j)
      if (exps[i] == exps[j]) distinct_nonneg_int = false;
  }
  if (distinct_nonneg_int) return PointClass::ApparentCandidate;
  return PointClass::General;
}

// evaluates p at a Gaussian rational, exactly
static GaussianRational eval_gaussian(const RationalPoly& p, const GaussianRational& z) {
  GaussianRational acc;
  for (long i = p.degree(); i >= 0; --i) {
    GaussianRational next;
    next.re = acc.re * z.re - acc.im * z.im + p.coeff(i);
    next.im = acc.re * z.im + acc.im * z.re;
    acc = next;
  }
  return acc;
}

std::vector<SingularPoint> singular_points(const Operator& op, unsigned digits) {
  int n = op.order;
  std::vector<SingularPoint> out;
  auto q = derivative_form(op);

  // z = 0 is singular unless every monic coefficient stays analytic there
  bool zero_ordinary = true;
  for (int k = 0; k < n && zero_ordinary; ++k) {
    RationalFunction r(q[k], q[n]);
    if (root_multiplicity(r.den(), Rational(0)) > 0) zero_ordinary = false;
  }
  if (!zero_ordinary) {
    SingularPoint sp;
    sp.exact = true;
    sp.location_exact = GaussianRational{};
    sp.location = BigComplex(0, 0, digits);
    sp.multiplicity = 1;
    IndicialData d = indicial_exponents(op, Rational(0));
    sp.exponents = d.exponents;
    sp.regular_singular = d.regular_singular;
    sp.classification = classify_exponents(n, sp.exponents);
    out.push_back(std::move(sp));
  }

  RationalPoly lead = op.theta[n];  // roots of P_n are the finite singularities != 0
  if (root_multiplicity(lead, Rational(0)) > 0) {
    RationalPoly lin({Rational(0), Rational(1)});
    while (root_multiplicity(lead, Rational(0)) > 0) lead = poly_divexact(lead, lin);
  }
  RationalPoly rem = lead;
  for (const auto& [r, m] : rational_roots(rem, BigInt("1000000000"), digits)) {
    SingularPoint sp;
    sp.exact = true;
    sp.location_exact = GaussianRational{r, Rational(0)};
    sp.location = BigComplex::from_rational(r, digits);
    sp.multiplicity = m;
    IndicialData d = indicial_exponents(op, r);
    sp.exponents = d.exponents;
    sp.regular_singular = d.regular_singular;
    sp.classification = classify_exponents(n, sp.exponents);
    out.push_back(std::move(sp));
  }
  if (rem.degree() > 0) {
    // gcd chain: a root appearing in the first k entries has multiplicity k
    std::vector<RationalPoly> chain{rem};
    while (chain.back().degree() > 0) {
      RationalPoly g = poly_gcd(chain.back(), chain.back().derivative());
      if (g.degree() < 1) break;
      chain.push_back(g);
    }
    RationalPoly sf = chain.size() > 1 ? poly_divexact(rem, chain[1]) : rem;
    std::vector<BigComplex> cc;
    for (const auto& v : sf.coeffs()) cc.push_back(BigComplex::from_rational(v, digits));
    auto roots = poly_roots(cc, digits);
    BigFloat ctol = mp::pow(BigFloat(10, digits), -static_cast<long>(digits) / 2);
    std::vector<std::pair<BigComplex, int>> clusters;
    for (const auto& r : roots) {
      int m = 1;
      for (std::size_t k = 1; k < chain.size(); ++k) {
        BigComplex val(0, 0, digits);
        for (long i = chain[k].degree(); i >= 0; --i)
          val = val * r + BigComplex::from_rational(chain[k].coeff(i), digits);
        if (val.abs() < ctol) m = static_cast<int>(k) + 1;
      }
      clusters.emplace_back(r, m);
    }
    for (const auto& [loc, m] : clusters) {
      SingularPoint sp;
      sp.location = loc;
      sp.multiplicity = m;
      // exact Gaussian-rational location when it verifies
      try {
        GaussianRational g = rationalize(loc, BigInt("1000000000"), ctol);
        GaussianRational v = eval_gaussian(rem, g);
        if (v.re == 0 && v.im == 0) {
          sp.exact = true;
          sp.location_exact = g;
        }
      } catch (const NoRationalFound&) {
      }
      IndicialData d = indicial_exponents_numeric(op, loc, digits);
      sp.exponents = d.exponents;
      sp.regular_singular = d.regular_singular;
      sp.classification = classify_exponents(n, sp.exponents);
      out.push_back(std::move(sp));
    }
  }

  SingularPoint inf;
  inf.at_infinity = true;
  inf.location = BigComplex(0, 0, digits);
  IndicialData d = indicial_exponents_infinity(op);
  inf.exponents = d.exponents;
  inf.regular_singular = d.regular_singular;
  inf.classification = classify_exponents(n, inf.exponents);
  out.push_back(std::move(inf));
  return out;
}

std::vector<Rational> holomorphic_coefficients(const Operator& op, int count) {
  auto b = recurrence_polys(op, Rational(0));
  std::size_t jmax = b.size() - 1;
  std::vector<Rational> c(count);
  if (count <= 0) return c;
  c[0] = 1;
  for (int m = 1; m < count; ++m) {
    Rational rhs(0);
    for (std::size_t j = 1; j <= jmax && j <= static_cast<std::size_t>(m); ++j)
      rhs -= b[j](Rational(m - static_cast<long>(j))) * c[m - j];
    Rational pivot = b[0](Rational(m));
    if (pivot == 0)
      throw std::domain_error("resonant index in holomorphic expansion at 0");
    c[m] = rhs / pivot;
  }
  return c;
}

static std::vector<RationalPoly> cyclotomics_up_to(int kmax) {
  std::vector<RationalPoly> phi(kmax + 1);
  for (int k = 1; k <= kmax; ++k) {
    // x^k - 1
    std::vector<Rational> c(k + 1, Rational(0));
    c[0] = -1;
    c[k] = 1;
    RationalPoly p(std::move(c));
    for (int d = 1; d < k; ++d)
      if (k % d == 0) p = poly_divexact(p, phi[d]);
    phi[k] = p;
  }
  return phi;
}

bool is_cyclotomic_product(const RationalPoly& p) {
  if (p.is_zero()) return false;
  RationalPoly q = p;
  {
    Rational lead = q.leading();
    std::vector<Rational> c = q.coeffs();
    for (auto& v : c) v /= lead;
    q = RationalPoly(std::move(c));
  }
  auto phi = cyclotomics_up_to(60);
  bool progress = true;
  while (q.degree() > 0 && progress) {
    progress = false;
    for (int k = 1; k <= 60 && q.degree() > 0; ++k) {
      if (phi[k].degree() > q.degree()) continue;
      auto [d, r] = poly_divmod(q, phi[k]);
      if (r.is_zero()) {
        q = d;
        progress = true;
      }
    }
  }
  return q.degree() == 0;
}

CyTypeReport cy_type_check(const Operator& op, int N,
                           const std::optional<RationalPoly>& monodromy_charpoly) {
  if (op.order != 4) throw std::invalid_argument("type check expects an order-4 operator");
  CyTypeReport rep;
  auto fail = [&](Verdict& v, const std::string& w) {
    v = Verdict::Fail;
    if (rep.witness.empty()) rep.witness = w;
  };

  std::vector<SingularPoint> pts;
  try {
    pts = singular_points(op, 60);
    rep.a = Verdict::Pass;
    for (const auto& sp : pts)
      if (!sp.regular_singular)
        fail(rep.a, "irregular singular point");
  } catch (const ExponentError& e) {
    fail(rep.a, e.what());
  }

  try {
    IndicialData d0 = indicial_exponents(op, Rational(0));
    rep.b = Verdict::Pass;
    for (const auto& e : d0.exponents)
      if (e != 0) fail(rep.b, "exponent at 0 differs from 0");
    if (static_cast<int>(d0.exponents.size()) != 4)
      fail(rep.b, "indicial equation at 0 is degenerate");
  } catch (const ExponentError& e) {
    fail(rep.b, e.what());
  }

  rep.c = Verdict::Fail;
  for (const auto& sp : pts)
    if (!sp.at_infinity && sp.classification == PointClass::Conifold) rep.c = Verdict::Pass;
  if (rep.c == Verdict::Fail && rep.witness.empty())
    rep.witness = "no singular point with exponents 0,1,1,2";

  try {
    rep.d = Verdict::Pass;
    for (const auto& c : holomorphic_coefficients(op, N + 1))
      if (!is_integer(c)) {
        fail(rep.d, "non-integral holomorphic coefficient");
        break;
      }
  } catch (const std::exception& e) {
    fail(rep.d, e.what());
  }

  try {
    IndicialData di = indicial_exponents_infinity(op);
    const auto& l = di.exponents;  // sorted
    if (l.size() == 4 && l[0] + l[3] == l[1] + l[2]) {
      if (monodromy_charpoly) {
        if (is_cyclotomic_product(*monodromy_charpoly))
          rep.e = Verdict::Pass;
        else
          fail(rep.e, "characteristic polynomial at infinity not a cyclotomic product");
      } else {
        rep.e = Verdict::NotChecked;
      }
    } else {
      fail(rep.e, "exponents at infinity lack the required symmetry");
    }
  } catch (const ExponentError& e) {
    fail(rep.e, e.what());
  }

  {
    auto r = to_monic_derivative_form(op);
    const RationalFunction &r1 = r[1], &r2 = r[2], &r3 = r[3];
    RationalFunction half(RationalPoly::constant(Rational(1, 2)), RationalPoly::constant(1));
    RationalFunction eighth(RationalPoly::constant(Rational(1, 8)), RationalPoly::constant(1));
    RationalFunction threequarter(RationalPoly::constant(Rational(3, 4)),
                                  RationalPoly::constant(1));
    RationalFunction rhs = half * r2 * r3 - eighth * r3 * r3 * r3 + r2.derivative() -
                           threequarter * r3.derivative() * r3 -
                           half * r3.derivative().derivative();
    if (r1 == rhs)
      rep.f = Verdict::Pass;
    else
      fail(rep.f, "coefficient identity on the monic form fails");
  }

  rep.g = Verdict::NotChecked;
  return rep;
}

}  // namespace pfm

// SPDX-License-Identifier: Apache-2.0
#include "pfm/monodromy.hpp"

#include "pfm/constants.hpp"

#include <algorithm>

namespace pfm {

namespace mp = boost::multiprecision;

CMatrix scaling_to_normalized(int order, const Constants& c) {
  unsigned d = c.precision;
  CMatrix s(order, order, d);
  BigComplex p(1, 0, d);
  // row a holds y_{n-1-a} / (2 pi i)^{n-1-a}
  for (int k = 0; k < order; ++k) {
    s.at(order - 1 - k, k) = BigComplex(1, 0, d) / p;
    p = p * c.two_pi_i;
  }
  return s;
}

CMatrix unipotent_origin_loop(int order, unsigned digits) {
  CMatrix t(order, order, digits);
  for (int a = 0; a < order; ++a) {
    Rational f(1);
    for (int b = a; b < order; ++b) {
      if (b > a) f /= (b - a);
      t.at(a, b) = BigComplex::from_rational(f, digits);
    }
  }
  return t;
}

namespace {

void require_mum_origin(const FrobeniusBasis& b) {
  if (static_cast<int>(b.solutions.size()) != b.order)
    throw MonodromyError("origin basis is incomplete");
  for (int k = 0; k < b.order; ++k)
    if (b.slots[k].depth != k || b.slots[k].offset != 0 ||
        b.solutions[k].lambda != 0)
      throw MonodromyError("operator is not maximally unipotent at the origin");
}

// smallest truncation that still exhibits every resonance of the local basis
int resonance_span(const Operator& op, const ExpansionPoint& p, unsigned digits) {
  IndicialData ind = p.at_infinity
                         ? indicial_exponents_infinity(op)
                         : (p.rational ? indicial_exponents(op, p.q)
                                       : indicial_exponents_numeric(op, p.z, digits));
  int span = 0;
  for (const auto& a : ind.exponents)
    for (const auto& b : ind.exponents) {
      Rational d = a - b;
      if (is_nonneg_integer(d)) span = std::max(span, numerator(d).convert_to<int>());
    }
  return span + 4;
}

}  // namespace

MonodromyResult monodromy_about(const Operator& op, const ExpansionPoint& p,
                                const ContinuationConfig& cfg) {
  if (p.at_infinity)
    throw MonodromyError("loop around infinity comes from the generator product");
  ExpansionPoint target = p;
  if (!target.rational)
    target.z = refine_singular_location(op, target.z, cfg.max_precision);
  unsigned digits = cfg.precision;
  auto consts = compute_constants(digits);
  auto sings = singular_locations(op, std::max(digits, 50u));

  // validate the origin structure cheaply
  {
    auto ob = frobenius_basis(op, ExpansionPoint::origin(), 4, digits, BigFloat(1));
    require_mum_origin(ob);
  }

  CMatrix s = scaling_to_normalized(op.order, consts);
  CMatrix si = s.inverse();

  // loop matrix of t -> t e^{2 pi i} in the local basis at the target
  auto pb = frobenius_basis(op, target, resonance_span(op, target, digits), digits,
                            BigFloat(1));
  CMatrix l = local_monodromy(pb);

  if (target.rational && target.q == 0) {
    MonodromyResult r;
    r.t = s * l * si;
    r.error = mp::pow(BigFloat(10, digits), -static_cast<int>(digits) + 8);
    r.is_identity = false;
    return r;
  }

  BigComplex zf(0, 0, digits);
  BigComplex zt = target.rational ? BigComplex::from_rational(target.q, digits)
                                  : target.z;
  auto chain = plan_waypoints(zf, zt, sings, cfg.ratio_cap, cfg.ladder);
  if (chain.size() < 2) throw MonodromyError("degenerate loop target");
  BigFloat af = initial_arg(chain[1].location - zf);
  BigFloat at = initial_arg(chain[0].location - zt) +
                principal_arg((chain[1].location - zt) / (chain[0].location - zt));
  TransitionMatrix m =
      connect(op, ExpansionPoint::origin(), target, cfg, sings, af, at);

  CMatrix mi = m.m.inverse();
  CMatrix raw = m.m * l * mi;
  MonodromyResult r;
  r.t = s * raw * si;
  r.error = m.error_estimate * (BigFloat(1) + l.max_norm()) * m.m.max_norm() *
            mi.max_norm();
  BigFloat dev = r.t.max_diff(CMatrix::identity(op.order, digits));
  BigFloat floor_tol = mp::pow(BigFloat(10, digits), -static_cast<int>(digits) / 2);
  r.is_identity = dev < std::max(BigFloat(1000) * r.error, floor_tol);
  return r;
}

CMatrix fixed_truncation_loop(const Operator& op, const Rational& target,
                              const Rational& common, int terms, unsigned digits) {
  auto consts = compute_constants(digits);
  ExpansionPoint from = ExpansionPoint::origin();
  ExpansionPoint to = ExpansionPoint::from_rational(target);
  auto bf = frobenius_basis(op, from, terms, digits, BigFloat(1));
  require_mum_origin(bf);
  auto bt = frobenius_basis(op, to, std::max(terms, resonance_span(op, to, digits)),
                            digits, BigFloat(1));
  BigComplex zc = BigComplex::from_rational(common, digits);
  BranchRecord brf{initial_arg(zc - from.z)};
  BranchRecord brt{initial_arg(zc - to.z)};
  TransitionMatrix m = transition_matrix(bf, bt, zc, brf, brt);
  CMatrix l = local_monodromy(bt);
  CMatrix s = scaling_to_normalized(op.order, consts);
  return s * (m.m * l * m.m.inverse()) * s.inverse();
}

GeneratorSet monodromy_generators(const Operator& op, const ContinuationConfig& cfg) {
  unsigned digits = cfg.precision;
  GeneratorSet g;
  auto pts = singular_points(op, std::max(digits, 50u));
  std::vector<SingularPoint> finite;
  for (const auto& sp : pts)
    if (!sp.at_infinity) finite.push_back(sp);
  std::stable_sort(finite.begin(), finite.end(),
                   [](const SingularPoint& a, const SingularPoint& b) {
                     if (a.location.is_zero() != b.location.is_zero())
                       return a.location.is_zero();
                     BigFloat aa = principal_arg(a.location);
                     BigFloat ab = principal_arg(b.location);
                     if (aa != ab) return aa < ab;
                     return a.location.abs() < b.location.abs();
                   });
  g.points = finite;

  for (const auto& sp : finite) {
    ExpansionPoint p;
    if (sp.exact && sp.location_exact.im == 0)
      p = ExpansionPoint::from_rational(sp.location_exact.re);
    else
      p = ExpansionPoint::from_complex(BigComplex(sp.location.real(),
                                                  sp.location.imag(), digits));
    g.loops.push_back(monodromy_about(op, p, cfg));
  }

  // product relation: the loop around infinity is the composite of the
  // finite loops taken in order
  MonodromyResult inf;
  inf.t = CMatrix::identity(op.order, digits);
  inf.error = make_float(digits);
  for (const auto& r : g.loops) {
    inf.t = r.t * inf.t;
    inf.error += r.error * (BigFloat(1) + inf.t.max_norm());
  }
  inf.is_identity =
      inf.t.max_diff(CMatrix::identity(op.order, digits)) < BigFloat(1000) * (inf.error + mp::pow(BigFloat(10, digits), -static_cast<int>(digits) / 2));
  g.loop_infinity = inf;
  return g;
}

}  // namespace pfm

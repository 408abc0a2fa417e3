// SPDX-License-Identifier: Apache-2.0
#include "pfm/continuation.hpp"

#include <complex>
#include <map>

namespace pfm {

namespace mp = boost::multiprecision;

std::vector<BigComplex> singular_locations(const Operator& op, unsigned digits) {
  std::vector<BigComplex> out;
  for (const auto& sp : singular_points(op, digits))
    if (!sp.at_infinity) out.push_back(sp.location);
  return out;
}

BigFloat local_radius(const BigComplex& p, const std::vector<BigComplex>& singularities,
                      const BigFloat& exclude_within) {
  BigFloat best(0);
  bool found = false;
  for (const auto& s : singularities) {
    BigFloat d = (p - s).abs();
    if (d <= exclude_within) continue;
    if (!found || d < best) {
      best = d;
      found = true;
    }
  }
  if (!found) best = BigFloat("1e30");  // effectively unbounded disk
  return best;
}

BigFloat initial_arg(const BigComplex& toward_minus_center) {
  BigFloat a = principal_arg(toward_minus_center);
  // below-axis convention: the negative real axis belongs to arg = -pi
  if (toward_minus_center.imag().is_zero() && toward_minus_center.real() < 0) a = -a;
  return a;
}

namespace {

using cd = std::complex<double>;

double dist_segment(cd a, cd b, cd p) {
  cd ab = b - a;
  double l2 = std::norm(ab);
  if (l2 == 0) return std::abs(p - a);
  double t = std::clamp(((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / l2,
                        0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

cd to_cd(const BigComplex& z) {
  return cd(z.real().convert_to<double>(), z.imag().convert_to<double>());
}

double radius_of(cd p, const std::vector<cd>& sings, double exclude) {
  double best = 1e30;
  for (const auto& s : sings) {
    double d = std::abs(p - s);
    if (d <= exclude) continue;
    best = std::min(best, d);
  }
  return best;
}

}  // namespace

std::vector<Waypoint> plan_waypoints(const BigComplex& z_from, const BigComplex& z_to,
                                     const std::vector<BigComplex>& singularities,
                                     double ratio_cap, double ladder) {
  std::vector<cd> sings;
  for (const auto& s : singularities) sings.push_back(to_cd(s));
  cd from = to_cd(z_from), to = to_cd(z_to);
  double scale = std::max({std::abs(from), std::abs(to), 1e-30});
  for (const auto& s : sings) scale = std::max(scale, std::abs(s));
  double eps = 1e-12 * scale;
  if (std::abs(from - to) <= eps) return {};

  auto mk_wp = [](cd p, bool anchor, double rp = 0, double rn = 0) {
    Waypoint w;
    w.location = BigComplex(BigFloat(p.real()), BigFloat(p.imag()), kDefaultPrecision);
    w.is_anchor = anchor;
    w.ratio_prev = BigFloat(rp);
    w.ratio_next = BigFloat(rn);
    return w;
  };

  std::vector<Waypoint> chain;
  cd a = from;
  double ra = radius_of(a, sings, eps);
  chain.push_back(mk_wp(a, true));

  // subtargets: detour waypoints pushed when a singularity blocks the
  // corridor ahead; the final destination sits at the bottom
  std::vector<cd> targets{to};
  std::map<std::pair<double, double>, int> detours;

  for (int guard = 0; guard < 512; ++guard) {
    cd tgt = targets.back();
    double rtgt = radius_of(tgt, sings, eps);

    // a singularity between us and the subtarget, close to the ray and
    // close enough that the cap would force us to creep into it
    cd dir = (tgt - a) / std::abs(tgt - a);
    const cd* blocker = nullptr;
    double bdist = 1e30;
    for (const auto& s : sings) {
      if (std::abs(s - a) <= eps || std::abs(s - to) <= eps ||
          std::abs(s - tgt) <= eps)
        continue;
      cd u = s - a;
      double proj = u.real() * dir.real() + u.imag() * dir.imag();
      if (proj <= 0 || proj >= std::abs(tgt - a)) continue;
      double perp = std::abs(u.real() * dir.imag() - u.imag() * dir.real());
      double rs = radius_of(s, sings, eps);
      if (perp < 0.5 * rs && std::abs(s - a) < 2.0 * rs && std::abs(s - a) < bdist) {
        blocker = &s;
        bdist = std::abs(s - a);
      }
    }
    if (blocker) {
      auto key = std::make_pair(blocker->real(), blocker->imag());
      if (++detours[key] > 3)
        throw PathError("no admissible waypoint chain (singularities too close)");
      double rs = radius_of(*blocker, sings, eps);
      targets.push_back(*blocker - cd(0, 1) * dir * (0.75 * rs));  // pass below
      continue;
    }

    if (std::abs(a - tgt) <= ratio_cap * (ra + rtgt)) {
      double u = ra / (ra + rtgt);
      cd zeta = a + u * (tgt - a);
      chain.push_back(mk_wp(zeta, false, std::abs(zeta - a) / ra,
                            std::abs(zeta - tgt) / rtgt));
      chain.push_back(mk_wp(tgt, true));
      targets.pop_back();
      if (targets.empty()) return chain;
      a = tgt;
      ra = rtgt;
      continue;
    }

    double step = std::min(ladder * ratio_cap * ra, std::abs(tgt - a));
    cd next;
    double rn = 0;
    bool ok = false;
    for (int shrink = 0; shrink < 80; ++shrink) {
      next = a + step * dir;
      rn = radius_of(next, sings, eps);
      bool feasible = std::abs(next - a) <= ratio_cap * (ra + rn);
      // the leg must keep clear of every singularity
      double clearance = 0.1 * std::min(ra, std::max(rn, 1e-30));
      bool too_close = false;
      for (const auto& s : sings) {
        if (std::abs(s - a) <= eps || std::abs(s - to) <= eps) continue;
        if (dist_segment(a, next, s) < clearance ||
            (feasible && std::abs(next - s) < clearance)) {
          too_close = true;
          break;
        }
      }
      if (feasible && !too_close) {
        ok = true;
        break;
      }
      step *= 0.7;
    }
    if (!ok) throw PathError("no admissible waypoint chain (singularities too close)");
    double u = ra / (ra + rn);
    cd zeta = a + u * (next - a);
    chain.push_back(mk_wp(zeta, false, std::abs(zeta - a) / ra,
                          std::abs(zeta - next) / rn));
    chain.push_back(mk_wp(next, true));
    a = next;
    ra = rn;
  }
  throw PathError("no admissible waypoint chain (too many hops)");
}

TransitionMatrix transition_matrix(const FrobeniusBasis& from, const FrobeniusBasis& to,
                                   const BigComplex& zeta, const BranchRecord& branch_from,
                                   const BranchRecord& branch_to) {
  unsigned digits = std::min(from.digits, to.digits);
  BigFloat tail_a = make_float(digits), tail_b = make_float(digits);
  CMatrix wa = evaluate_basis(from, zeta, branch_from, &tail_a);
  CMatrix wb = evaluate_basis(to, zeta, branch_to, &tail_b);
  // Equilibrate before inverting: the rows and columns of wb carry the
  // t^lambda and t^-k scales of the local basis, which inflate the measured
  // condition number without losing information.
  std::size_t n = wb.rows();
  std::vector<BigFloat> col(n, BigFloat(1)), row(n, BigFloat(1));
  for (std::size_t j = 0; j < n; ++j) {
    BigFloat s(0);
    for (std::size_t i = 0; i < n; ++i)
      if (wb.at(i, j).abs() > s) s = wb.at(i, j).abs();
    if (!s.is_zero()) col[j] = s;
  }
  for (std::size_t i = 0; i < n; ++i) {
    BigFloat s(0);
    for (std::size_t j = 0; j < n; ++j) {
      BigFloat v = wb.at(i, j).abs() / col[j];
      if (v > s) s = v;
    }
    if (!s.is_zero()) row[i] = s;
  }
  CMatrix wb_s(n, n, digits), wa_s(n, n, digits);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      wb_s.at(i, j) = wb.at(i, j) / BigComplex(row[i] * col[j], BigFloat(0), digits);
      wa_s.at(i, j) = wa.at(i, j) / BigComplex(col[j], BigFloat(0), digits);
    }
  CMatrix wbi_s = wb_s.inverse();
  BigFloat cond = wb_s.max_norm() * wbi_s.max_norm();
  if (cond > mp::pow(BigFloat(10, digits), digits / 2))
    throw ConvergenceError("common-point evaluation matrix is numerically singular");
  CMatrix m = wa_s * wbi_s;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) = m.at(i, j) / BigComplex(row[j], BigFloat(0), digits);
  TransitionMatrix t;
  t.m = m;
  BigFloat residual = (wa - m * wb).max_norm();
  t.error_estimate = tail_a + tail_b * m.max_norm() + residual;
  return t;
}

namespace {

struct ChainResult {
  CMatrix m;
  BigFloat err;
};

ChainResult run_chain(const Operator& op, const ExpansionPoint& from,
                      const ExpansionPoint& to, const std::vector<Waypoint>& chain,
                      const std::vector<BigComplex>& singularities, int N, unsigned digits,
                      const BigFloat& arg_from_init, const BigFloat& arg_to_init) {
  // anchors and common points in order
  std::vector<BigComplex> nodes;
  for (const auto& w : chain) nodes.push_back(w.location);
  BigComplex zf = from.at_infinity ? BigComplex(0, 0, digits)
                                   : (from.rational ? BigComplex::from_rational(from.q, digits)
                                                    : from.z);
  BigComplex zt = to.rational ? BigComplex::from_rational(to.q, digits) : to.z;

  // thread continuous arguments of (node - endpoint) along the chain; the
  // first and last nodes are the endpoints themselves and carry no argument
  std::vector<BigFloat> argf(nodes.size()), argt(nodes.size());
  argf[1] = arg_from_init;
  for (std::size_t i = 2; i + 1 < nodes.size(); ++i)
    argf[i] = argf[i - 1] + principal_arg((nodes[i] - zf) / (nodes[i - 1] - zf));
  argt[1] = arg_to_init;
  for (std::size_t i = 2; i + 1 < nodes.size(); ++i)
    argt[i] = argt[i - 1] + principal_arg((nodes[i] - zt) / (nodes[i - 1] - zt));

  BigFloat exclude = make_float(digits);
  {
    BigFloat scale(1);
    for (const auto& s : singularities) {
      BigFloat a = s.abs();
      if (a > scale) scale = a;
    }
    exclude = scale * mp::pow(BigFloat(10, digits), -9);
  }

  // bases at the anchors (chain entries 0, 2, 4, ...)
  std::vector<FrobeniusBasis> bases;
  std::vector<std::size_t> anchor_idx;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!chain[i].is_anchor) continue;
    anchor_idx.push_back(i);
    ExpansionPoint pt;
    if (i == 0)
      pt = from;
    else if (i + 1 == chain.size())
      pt = to;
    else
      pt = ExpansionPoint::from_complex(BigComplex(chain[i].location.real(),
                                                   chain[i].location.imag(), digits));
    BigComplex loc = pt.rational ? BigComplex::from_rational(pt.q, digits)
                                 : (pt.at_infinity ? BigComplex(0, 0, digits) : pt.z);
    BigFloat radius = local_radius(loc, singularities, exclude);
    bases.push_back(frobenius_basis(op, pt, N, digits, radius));
  }

  ChainResult out{CMatrix::identity(op.order, digits), make_float(digits)};
  for (std::size_t h = 0; h + 1 < bases.size(); ++h) {
    std::size_t ci = anchor_idx[h] + 1;  // the common point between the anchors
    const BigComplex& zeta = nodes[ci];
    BranchRecord bf, bt;
    // only the endpoint bases carry non-integer exponents or logs; interior
    // anchors are ordinary, where the branch cannot matter
    bf.arg = (h == 0) ? argf[ci]
                      : principal_arg(zeta - (bases[h].point.rational
                                                  ? BigComplex::from_rational(bases[h].point.q, digits)
                                                  : bases[h].point.z));
    bt.arg = (h + 2 == bases.size())
                 ? argt[ci]
                 : principal_arg(zeta - (bases[h + 1].point.rational
                                             ? BigComplex::from_rational(bases[h + 1].point.q, digits)
                                             : bases[h + 1].point.z));
    BigComplex zeta_d(zeta.real(), zeta.imag(), digits);
    TransitionMatrix t = transition_matrix(bases[h], bases[h + 1], zeta_d, bf, bt);
    out.m = out.m * t.m;
    out.err += t.error_estimate;
  }
  return out;
}

}  // namespace

TransitionMatrix connect(const Operator& op, const ExpansionPoint& from,
                         const ExpansionPoint& to, const ContinuationConfig& cfg,
                         const std::vector<BigComplex>& singularities,
                         const BigFloat& arg_from, const BigFloat& arg_to) {
  if (from.at_infinity || to.at_infinity)
    throw PathError("continuation to infinity is not supported; use the loop product");
  BigComplex zf = from.rational ? BigComplex::from_rational(from.q, 40) : from.z;
  BigComplex zt = to.rational ? BigComplex::from_rational(to.q, 40) : to.z;
  auto chain = plan_waypoints(zf, zt, singularities, cfg.ratio_cap, cfg.ladder);
  if (chain.empty()) {
    TransitionMatrix t;
    t.m = CMatrix::identity(op.order, cfg.precision);
    t.error_estimate = make_float(cfg.precision);
    return t;
  }

  int N = cfg.terms;
  unsigned P = cfg.precision;
  bool have_prev = false;
  ChainResult prev{CMatrix(), BigFloat(0)};
  BigFloat best_diff("1e40");
  while (true) {
    unsigned run_p = std::max<unsigned>(P, static_cast<unsigned>(N / 4 + 30));
    if (N > cfg.max_terms || run_p > cfg.max_precision)
      throw ConvergenceError("continuation did not stabilize within the budget "
                             "(best agreement " + best_diff.str(3) + ")");
    ChainResult cur = run_chain(op, from, to, chain, singularities, N, run_p,
                                arg_from, arg_to);
    if (have_prev) {
      BigFloat diff = make_float(run_p);
      for (std::size_t i = 0; i < cur.m.rows(); ++i)
        for (std::size_t j = 0; j < cur.m.cols(); ++j) {
          BigFloat d = (cur.m.at(i, j) - prev.m.at(i, j)).abs();
          if (d > diff) diff = d;
        }
      if (diff < best_diff) best_diff = diff;
      if (diff <= cfg.tol) {
        TransitionMatrix t;
        t.m = cur.m;
        t.error_estimate = diff + cur.err;
        return t;
      }
    }
    prev = cur;
    have_prev = true;
    N *= 2;
  }
}

TransitionMatrix connect(const Operator& op, const ExpansionPoint& from,
                         const ExpansionPoint& to, const ContinuationConfig& cfg) {
  auto sings = singular_locations(op, std::max(cfg.precision, 50u));
  BigComplex zf = from.rational ? BigComplex::from_rational(from.q, 40) : from.z;
  BigComplex zt = to.rational ? BigComplex::from_rational(to.q, 40) : to.z;
  auto chain = plan_waypoints(zf, zt, sings, cfg.ratio_cap, cfg.ladder);
  BigFloat af = make_float(cfg.precision), at = make_float(cfg.precision);
  if (chain.size() >= 2) {
    // both args refer to the first common point; the target sheet is fixed
    // by the principal argument at the path's start
    af = initial_arg(chain[1].location - zf);
    at = initial_arg(chain[0].location - zt) +
         principal_arg((chain[1].location - zt) / (chain[0].location - zt));
  }
  return connect(op, from, to, cfg, sings, af, at);
}

}  // namespace pfm

// SPDX-License-Identifier: Apache-2.0
#include "pfm/frobenius.hpp"

#include "pfm/constants.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace pfm {

namespace mp = boost::multiprecision;
using nlohmann::json;

namespace {

// Taylor coefficients p(a+e) = sum_r out[r] e^r, r <= K, by repeated
// synthetic division.
std::vector<BigComplex> taylor_at(const std::vector<BigComplex>& p, const BigComplex& a,
                                  int K, unsigned digits) {
  std::vector<BigComplex> c = p;
  std::vector<BigComplex> out;
  out.reserve(K + 1);
  for (int r = 0; r <= K; ++r) {
    if (c.empty()) {
      out.emplace_back(0, 0, digits);
      continue;
    }
    BigComplex acc = c.back();
    std::vector<BigComplex> q;
    q.reserve(c.size() - 1);
    for (std::size_t i = c.size() - 1; i-- > 0;) {
      q.push_back(acc);
      acc = c[i] + acc * a;
    }
    std::reverse(q.begin(), q.end());
    out.push_back(acc);  // remainder = p evaluated at a
    c = std::move(q);
  }
  return out;
}

struct LocalSetup {
  std::vector<std::vector<BigComplex>> b;  // b[j] = B_j coefficients in lambda
  std::vector<Rational> exponents;         // sorted with multiplicity
};

LocalSetup local_setup(const Operator& op, const ExpansionPoint& pt, unsigned digits) {
  LocalSetup s;
  if (pt.at_infinity) {
    for (const auto& p : recurrence_polys_infinity(op)) {
      std::vector<BigComplex> v;
      for (const auto& c : p.coeffs()) v.push_back(BigComplex::from_rational(c, digits));
      s.b.push_back(std::move(v));
    }
    s.exponents = indicial_exponents_infinity(op).exponents;
  } else if (pt.rational) {
    for (const auto& p : recurrence_polys(op, pt.q)) {
      std::vector<BigComplex> v;
      for (const auto& c : p.coeffs()) v.push_back(BigComplex::from_rational(c, digits));
      s.b.push_back(std::move(v));
    }
    s.exponents = indicial_exponents(op, pt.q).exponents;
  } else {
    s.b = recurrence_polys_numeric(op, pt.z, digits);
    s.exponents = indicial_exponents_numeric(op, pt.z, digits).exponents;
  }
  return s;
}

}  // namespace

FrobeniusBasis frobenius_basis(const Operator& op, const ExpansionPoint& point,
                               int N, unsigned digits, const BigFloat& radius) {
  if (N < 4 * op.order) N = 4 * op.order;
  LocalSetup setup = local_setup(op, point, digits);
  int n = op.order;
  if (static_cast<int>(setup.b[0].size()) != n + 1)
    throw std::domain_error("point is not regular singular");

  FrobeniusBasis basis;
  basis.point = point;
  basis.order = n;
  basis.terms = N;
  basis.digits = digits;
  basis.radius = radius;

  // group exponents into classes modulo 1
  for (const auto& e : setup.exponents) {
    bool placed = false;
    for (auto& cl : basis.classes) {
      if (is_integer(e - cl.lambda_star)) {
        placed = true;
        break;
      }
    }
    if (!placed) {
      ExponentClass cl;
      cl.lambda_star = e;  // exponents are sorted, so the first hit is minimal
      basis.classes.push_back(cl);
    }
  }
  std::sort(basis.classes.begin(), basis.classes.end(),
            [](const ExponentClass& a, const ExponentClass& b) {
              return a.lambda_star < b.lambda_star;
            });
  for (auto& cl : basis.classes) {
    for (const auto& e : setup.exponents) {
      if (!is_integer(e - cl.lambda_star)) continue;
      int off = numerator(e - cl.lambda_star).convert_to<int>();
      if (!cl.resonances.empty() && cl.resonances.back().first == off)
        cl.resonances.back().second += 1;
      else
        cl.resonances.emplace_back(off, 1);
    }
  }

  const BigComplex czero(0, 0, digits);
  std::size_t jmax = setup.b.size() - 1;
  BigFloat rel_eps = mp::pow(BigFloat(10, digits), -static_cast<long>(digits) + 20);

  for (int cid = 0; cid < static_cast<int>(basis.classes.size()); ++cid) {
    const auto& cl = basis.classes[cid];
    int E = 0;
    for (const auto& [o, m] : cl.resonances) E += m;
    int K = E - 1;
    BigComplex lam = BigComplex::from_rational(cl.lambda_star, digits);

    // slots in echelon order
    std::vector<std::pair<int, int>> slot_list;  // (offset, depth)
    for (const auto& [off, mu] : cl.resonances)
      for (int v = 0; v < mu; ++v) slot_list.emplace_back(off, v);

    // coefficient tables, one per slot solution: c[slot][m][k]
    std::vector<std::vector<std::vector<BigComplex>>> c(
        E, std::vector<std::vector<BigComplex>>(N + 1,
                                                std::vector<BigComplex>(K + 1, czero)));

    for (int m = 0; m <= N; ++m) {
      BigComplex a = lam + BigComplex(m, 0, digits);
      std::vector<std::vector<BigComplex>> tb(jmax + 1);
      tb[0] = taylor_at(setup.b[0], a, K, digits);
      for (std::size_t j = 1; j <= jmax && j <= static_cast<std::size_t>(m); ++j)
        tb[j] = taylor_at(setup.b[j], a - BigComplex(static_cast<long>(j), 0, digits),
                          K, digits);
      int mu = 0;
      for (const auto& [off, mult] : cl.resonances)
        if (off == m) mu = mult;

      for (int s = 0; s < E; ++s) {
        // rhs[k] = -sum_{j>=1} sum_r tb[j][r] c[m-j][k+r], with magnitude trace
        std::vector<BigComplex> rhs(K + 1, czero);
        std::vector<BigFloat> mag(K + 1, make_float(digits));
        for (std::size_t j = 1; j <= jmax && j <= static_cast<std::size_t>(m); ++j) {
          for (int k = 0; k <= K; ++k)
            for (int r = 0; k + r <= K; ++r) {
              if (static_cast<std::size_t>(r) >= tb[j].size()) break;
              BigComplex term = tb[j][r] * c[s][m - j][k + r];
              rhs[k] -= term;
              mag[k] += term.abs();
            }
        }
        auto& cm = c[s][m];
        if (mu == 0) {
          for (int k = K; k >= 0; --k) {
            BigComplex acc = rhs[k];
            for (int r = 1; k + r <= K; ++r) acc -= tb[0][r] * cm[k + r];
            cm[k] = acc / tb[0][0];
          }
        } else {
          // free components first
          for (int v = 0; v < mu; ++v)
            cm[v] = (slot_list[s] == std::make_pair(m, v)) ? BigComplex(1, 0, digits)
                                                           : czero;
          for (int k = K - mu; k >= 0; --k) {
            BigComplex acc = rhs[k];
            for (int r = mu + 1; k + r <= K; ++r) acc -= tb[0][r] * cm[k + r];
            cm[k + mu] = acc / tb[0][mu];
          }
          for (int k = K - mu + 1; k <= K; ++k) {
            BigFloat bound = mag[k] * rel_eps;
            if (rhs[k].abs() > bound + rel_eps)
              throw ObstructionAnomaly(
                  "resonance constraint violated; exponent structure inconsistent");
          }
        }
      }
    }

    // package the echelon solutions
    for (int s = 0; s < E; ++s) {
      auto [s_off, s_depth] = slot_list[s];
      LogSeries ls;
      ls.lambda = cl.lambda_star + s_off;
      // largest depth actually used
      BigFloat peak = make_float(digits);
      for (int m = s_off; m <= N; ++m)
        for (int k = 0; k <= K; ++k) {
          BigFloat v = c[s][m][k].abs();
          if (v > peak) peak = v;
        }
      BigFloat thin = peak * mp::pow(BigFloat(10, digits), -static_cast<long>(digits) / 2);
      int depth = 0;
      for (int k = K; k >= 1; --k) {
        bool nonzero = false;
        for (int m = s_off; m <= N && !nonzero; ++m)
          if (c[s][m][k].abs() > thin) nonzero = true;
        if (nonzero) {
          depth = k;
          break;
        }
      }
      ls.parts.assign(depth + 1, std::vector<BigComplex>(N + 1 - s_off, czero));
      for (int m = s_off; m <= N; ++m)
        for (int k = 0; k <= depth; ++k) ls.parts[k][m - s_off] = c[s][m][k];
      basis.solutions.push_back(std::move(ls));
      basis.slots.push_back(SlotInfo{cid, s_off, s_depth});
    }
  }
  return basis;
}

namespace {

struct DerivedSeries {
  BigComplex lambda;
  std::vector<std::vector<BigComplex>> parts;
};

DerivedSeries derive(const DerivedSeries& s, unsigned digits) {
  DerivedSeries d;
  d.lambda = s.lambda - BigComplex(1, 0, digits);
  d.parts.resize(s.parts.size());
  std::size_t len = s.parts[0].size();
  for (std::size_t k = 0; k < s.parts.size(); ++k) {
    d.parts[k].assign(len, BigComplex(0, 0, digits));
    for (std::size_t m = 0; m < len; ++m) {
      BigComplex v = (s.lambda + BigComplex(static_cast<long>(m), 0, digits)) *
                     s.parts[k][m];
      if (k + 1 < s.parts.size()) v += s.parts[k + 1][m];
      d.parts[k][m] = v;
    }
  }
  return d;
}

BigComplex eval_series(const DerivedSeries& s, const BigComplex& t,
                       const BigComplex& logt, unsigned digits, BigFloat* tail) {
  BigComplex tpow = cexp(s.lambda * logt);
  BigComplex total(0, 0, digits);
  BigComplex logpow(1, 0, digits);
  BigComplex kfact(1, 0, digits);
  for (std::size_t k = 0; k < s.parts.size(); ++k) {
    if (k > 0) {
      logpow *= logt;
      kfact *= BigComplex(static_cast<long>(k), 0, digits);
    }
    BigComplex acc(0, 0, digits);
    for (std::size_t m = s.parts[k].size(); m-- > 0;) acc = acc * t + s.parts[k][m];
    total += acc * logpow / kfact;
    if (tail) {
      std::size_t last = s.parts[k].size() - 1;
      BigFloat est = s.parts[k][last].abs() *
                     mp::pow(t.abs(), static_cast<long>(last)) * (logpow / kfact).abs();
      if (est > *tail) *tail = est;
    }
  }
  return total * tpow;
}

}  // namespace

CMatrix evaluate_basis(const FrobeniusBasis& basis, const BigComplex& z,
                       const BranchRecord& branch, BigFloat* tail_estimate) {
  unsigned digits = basis.digits;
  int n = basis.order;
  BigComplex t(0, 0, digits);
  if (basis.point.at_infinity) {
    t = BigComplex(1, 0, digits) / z;
  } else if (basis.point.rational) {
    t = z - BigComplex::from_rational(basis.point.q, digits);
  } else {
    t = z - basis.point.z;
  }
  if (basis.radius > 0) {
    BigFloat ratio = t.abs() / basis.radius;
    if (ratio >= BigFloat("0.95"))
      throw ConvergenceError("evaluation point outside the convergence safety radius");
  }
  BigComplex logt(mp::log(t.abs()), branch.arg, digits);

  if (tail_estimate) *tail_estimate = make_float(digits);
  CMatrix w(n, n, digits);
  for (int i = 0; i < n; ++i) {
    DerivedSeries s;
    s.lambda = BigComplex::from_rational(basis.solutions[i].lambda, digits);
    s.parts = basis.solutions[i].parts;
    std::vector<BigComplex> locder;  // derivatives in the local variable
    for (int k = 0; k < n; ++k) {
      locder.push_back(eval_series(s, t, logt, digits, tail_estimate));
      if (k + 1 < n) s = derive(s, digits);
    }
    if (!basis.point.at_infinity) {
      for (int k = 0; k < n; ++k) w.at(i, k) = locder[k];
    } else {
      // chain rule through w = 1/z: y^(k)(z) = sum_j alpha[k][j] w^(k+j) y^(j)(w)
      std::vector<std::vector<long>> alpha(n, std::vector<long>(n, 0));
      alpha[0][0] = 1;
      for (int k = 0; k + 1 < n; ++k)
        for (int j = 0; j <= k; ++j) {
          alpha[k + 1][j] += -(k + j) * alpha[k][j];
          if (j + 1 < n) alpha[k + 1][j + 1] -= alpha[k][j];
        }
      for (int k = 0; k < n; ++k) {
        BigComplex acc(0, 0, digits);
        for (int j = 0; j <= k; ++j) {
          if (alpha[k][j] == 0) continue;
          BigComplex wp(1, 0, digits);
          for (int p = 0; p < k + j; ++p) wp *= t;
          acc += BigComplex(alpha[k][j], 0, digits) * wp * locder[j];
        }
        w.at(i, k) = acc;
      }
    }
  }
  return w;
}

CMatrix local_monodromy(const FrobeniusBasis& basis) {
  unsigned digits = basis.digits;
  int n = static_cast<int>(basis.solutions.size());
  Constants k = compute_constants(digits);
  CMatrix L(n, n, digits);
  // per class, powers of 2*pi*i over factorials
  for (int cid = 0; cid < static_cast<int>(basis.classes.size()); ++cid) {
    const auto& cl = basis.classes[cid];
    int E = 0;
    for (const auto& [o, m] : cl.resonances) E += m;
    int K = E - 1;
    std::vector<BigComplex> pw(K + 1, BigComplex(1, 0, digits));
    for (int d = 1; d <= K; ++d)
      pw[d] = pw[d - 1] * k.two_pi_i / BigComplex(d, 0, digits);
    // omega = exp(2*pi*i*lambda_star)
    BigComplex omega =
        cexp(k.two_pi_i * BigComplex::from_rational(cl.lambda_star, digits));

    // global indices of this class's solutions, in slot order
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (basis.slots[i].class_id == cid) members.push_back(i);

    for (int j : members) {
      const LogSeries& y = basis.solutions[j];
      int sj = basis.slots[j].offset;
      for (int idx : members) {
        int mi = basis.slots[idx].offset;
        int ki = basis.slots[idx].depth;
        BigComplex acc(0, 0, digits);
        if (mi >= sj) {
          int rel = mi - sj;
          for (int r = ki; r <= K; ++r) {
            if (r >= static_cast<int>(y.parts.size())) break;
            if (rel >= static_cast<int>(y.parts[r].size())) break;
            acc += pw[r - ki] * y.parts[r][rel];
          }
        }
        L.at(j, idx) = omega * acc;
      }
    }
  }
  return L;
}

std::string render_basis(const FrobeniusBasis& basis) {
  json sols = json::array();
  for (std::size_t i = 0; i < basis.solutions.size(); ++i) {
    const auto& s = basis.solutions[i];
    json parts = json::array();
    for (const auto& p : s.parts) {
      json row = json::array();
      for (const auto& c : p)
        row.push_back(json{{"re", c.real().str()}, {"im", c.imag().str()}});
      parts.push_back(std::move(row));
    }
    sols.push_back(json{{"lambda", render_rational(s.lambda)},
                        {"log_depth", s.log_depth()},
                        {"class", basis.slots[i].class_id},
                        {"parts", std::move(parts)}});
  }
  json pt;
  if (basis.point.at_infinity)
    pt = "infinity";
  else if (basis.point.rational)
    pt = render_rational(basis.point.q);
  else
    pt = json{{"re", basis.point.z.real().str()}, {"im", basis.point.z.imag().str()}};
  return json{{"point", pt},
              {"order", basis.order},
              {"terms", basis.terms},
              {"solutions", std::move(sols)}}.dump();
}

}  // namespace pfm

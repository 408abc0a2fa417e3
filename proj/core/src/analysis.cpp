// SPDX-License-Identifier: Apache-2.0
#include "pfm/analysis.hpp"

#include <algorithm>

namespace pfm {

namespace mp = boost::multiprecision;

ExactMatrix conjugate_and_snap(const CMatrix& g, const ExactMatrix& s,
                               const Constants& c, const BigInt& max_den,
                               const BigFloat& tol) {
  unsigned d = g.precision() ? g.precision() : kDefaultPrecision;
  CMatrix sn(s.rows(), s.cols(), d);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) sn.at(i, j) = s.at(i, j).to_complex(c);
  CMatrix conj = sn * g * sn.inverse();
  return snap_matrix(matrix_rows(conj), c, max_den, tol, 0);
}

std::vector<std::vector<BigComplex>> matrix_rows(const CMatrix& m) {
  std::vector<std::vector<BigComplex>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i].push_back(m.at(i, j));
  return rows;
}

namespace {

BigInt round_checked(const BigFloat& x, const BigFloat& tol, const char* what) {
  BigFloat r = mp::round(x);
  if (mp::abs(x - r) > tol)
    throw NonIntegerInvariant(std::string(what) + " residual " +
                              BigFloat(mp::abs(x - r)).str(3) + " exceeds tolerance");
  return r.convert_to<BigInt>();
}

BigInt gcd_acc(const BigInt& a, const Rational& q) {
  if (!is_integer(q)) throw NotInLevelFamily("non-integral entry in level computation");
  return mp::gcd(a, mp::abs(numerator(q)));
}

std::vector<std::pair<BigInt, int>> factorize(BigInt n) {
  std::vector<std::pair<BigInt, int>> f;
  n = mp::abs(n);
  for (BigInt p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.push_back({p, e});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

}  // namespace

Invariants extract_invariants(const CMatrix& t, const Constants& c, const BigFloat& tol) {
  if (t.rows() != 4 || t.cols() != 4)
    throw NotRawForm("conifold invariant extraction expects a 4x4 loop matrix");
  Invariants inv;
  if (mp::abs(t.at(3, 0).imag()) > tol)
    throw NotRawForm("(4,1) entry is not real");
  inv.d = round_checked(-t.at(3, 0).real(), tol, "H^3");
  if (inv.d < 1) throw NotRawForm("H^3 must be a positive integer");

  BigComplex b_entry = t.at(1, 0);
  if (mp::abs(b_entry.imag()) > tol) throw NotRawForm("(2,1) entry is not real");
  inv.c2H = round_checked(BigFloat(-24) * b_entry.real(), tol, "c_2.H");

  BigComplex a = t.at(0, 0) - BigComplex(1, 0, c.precision);
  if (mp::abs(a.real()) > tol) throw NotRawForm("(1,1) entry is not 1 + imaginary");
  inv.c3 = round_checked(a.imag() / c.unit.imag(), tol, "c_3");

  // every remaining entry must match the closed form
  auto pair = theorem1_pair(inv);
  BigFloat resid(0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      BigFloat d = (t.at(i, j) - pair.second.at(i, j).to_complex(c)).abs();
      if (d > resid) resid = d;
    }
  if (resid > tol)
    throw NotRawForm("loop matrix deviates from the closed raw form by " + resid.str(3));
  return inv;
}

std::pair<ExactMatrix, ExactMatrix> theorem1_pair(const Invariants& inv, int order) {
  if (order != 4) throw std::invalid_argument("closed loop pair is fourth order only");
  ExactMatrix t0(4, 4);
  for (int i = 0; i < 4; ++i) {
    Rational f(1);
    for (int j = i; j < 4; ++j) {
      if (j > i) f /= (j - i);
      t0.at(i, j) = ScaledRational(f);
    }
  }
  ScaledRational a = inv.a();
  ScaledRational b{inv.b()};
  ScaledRational d{Rational(inv.d)};
  ExactMatrix tc = ExactMatrix::identity(4);
  tc.at(0, 0) = ScaledRational(1) + a;
  tc.at(0, 2) = a * b / d;
  tc.at(0, 3) = a * a / d;
  tc.at(1, 0) = -b;
  tc.at(1, 2) = -(b * b / d);
  tc.at(1, 3) = -(a * b / d);
  tc.at(3, 0) = -d;
  tc.at(3, 2) = -b;
  tc.at(3, 3) = ScaledRational(1) - a;
  return {t0, tc};
}

ExactMatrix cy_conjugator(const Invariants& inv) {
  ScaledRational a = inv.a();
  Rational b = inv.b();
  Rational d(inv.d);
  ExactMatrix s(4, 4);
  s.at(0, 2) = ScaledRational(1);
  s.at(1, 3) = ScaledRational(1);
  s.at(2, 1) = ScaledRational(d);
  s.at(2, 2) = ScaledRational(d / 2);
  s.at(2, 3) = ScaledRational(-b);
  s.at(3, 0) = ScaledRational(-d);
  s.at(3, 2) = ScaledRational(-b);
  s.at(3, 3) = -a;
  return s;
}

std::vector<ExactMatrix> cy_conjugate(const std::vector<ExactMatrix>& gens,
                                      const Invariants& inv) {
  ExactMatrix s = cy_conjugator(inv);
  ExactMatrix si = s.inverse();
  std::vector<ExactMatrix> out;
  for (const auto& g : gens) out.push_back(s * g * si);
  return out;
}

ExactMatrix dm_conjugator(const Invariants& inv) {
  ScaledRational a = inv.a();
  Rational b = inv.b();
  Rational d(inv.d);
  ExactMatrix s(4, 4);
  s.at(0, 0) = ScaledRational(d);
  s.at(0, 2) = ScaledRational(b);
  s.at(0, 3) = a;
  s.at(1, 1) = ScaledRational(d);
  s.at(1, 2) = ScaledRational(d / 2);
  s.at(1, 3) = ScaledRational(d / 6 + b);
  s.at(2, 2) = ScaledRational(1);
  s.at(2, 3) = ScaledRational(1);
  s.at(3, 3) = ScaledRational(1);
  return s;
}

std::vector<ExactMatrix> dm_conjugate(const std::vector<ExactMatrix>& gens,
                                      const Invariants& inv) {
  ExactMatrix s = dm_conjugator(inv);
  ExactMatrix si = s.inverse();
  std::vector<ExactMatrix> out;
  for (const auto& g : gens) out.push_back(s * g * si);
  return out;
}

namespace {

ExactMatrix symplectic_j(std::size_t n) {
  ExactMatrix j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j.at(i, n + i) = ScaledRational(1);
    j.at(n + i, i) = ScaledRational(-1);
  }
  return j;
}

}  // namespace

bool symplectic_check(const ExactMatrix& m) {
  std::size_t dim = m.rows();
  if (dim != m.cols() || dim % 2 != 0) return false;
  std::size_t n = dim / 2;
  ExactMatrix j = symplectic_j(n);
  if (!(m.transpose() * j * m == j)) return false;
  // block characterization of the inverse
  ExactMatrix blk(dim, dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      blk.at(i, k) = m.at(n + k, n + i);          // D^t
      blk.at(i, n + k) = -m.at(k, n + i);         // -B^t
      blk.at(n + i, k) = -m.at(n + k, i);         // -C^t
      blk.at(n + i, n + k) = m.at(k, i);          // A^t
    }
  return blk * m == ExactMatrix::identity(dim);
}

bool symplectic_check(const CMatrix& m, const BigFloat& tol) {
  std::size_t dim = m.rows();
  if (dim != m.cols() || dim % 2 != 0) return false;
  std::size_t n = dim / 2;
  unsigned d = m.precision() ? m.precision() : kDefaultPrecision;
  CMatrix j(dim, dim, d);
  for (std::size_t i = 0; i < n; ++i) {
    j.at(i, n + i) = BigComplex(1, 0, d);
    j.at(n + i, i) = BigComplex(-1, 0, d);
  }
  CMatrix mt(dim, dim, d);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) mt.at(i, k) = m.at(k, i);
  return (mt * j * m).max_diff(j) <= tol;
}

CongruenceLevel congruence_level(const std::vector<ExactMatrix>& gens) {
  BigInt g_zero = 0, g_diag1 = 0, g_two = 0;
  BigInt d3 = 1;
  for (const auto& m : gens) {
    if (m.rows() != 4 || m.cols() != 4 || !m.is_rational())
      throw NotInLevelFamily("level computation expects rational 4x4 generators");
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        const Rational& q = m.at(i, j).rational_part();
        if (i == 0 && j == 2) {
          d3 = mp::lcm(d3, denominator(q));
          continue;
        }
        if (!is_integer(q))
          throw NotInLevelFamily("denominator outside the (1,3) slot");
      }
    // zero pattern mod d1: entries (2,1),(3,1),(4,1),(3,2),(3,4)
    g_zero = gcd_acc(g_zero, m.at(1, 0).rational_part());
    g_zero = gcd_acc(g_zero, m.at(2, 0).rational_part());
    g_zero = gcd_acc(g_zero, m.at(3, 0).rational_part());
    g_zero = gcd_acc(g_zero, m.at(2, 1).rational_part());
    g_zero = gcd_acc(g_zero, m.at(2, 3).rational_part());
    g_diag1 = gcd_acc(g_diag1, m.at(0, 0).rational_part() - 1);
    g_diag1 = gcd_acc(g_diag1, m.at(2, 2).rational_part() - 1);
    g_two = gcd_acc(g_two, m.at(1, 1).rational_part() - 1);
    g_two = gcd_acc(g_two, m.at(3, 3).rational_part() - 1);
    g_two = gcd_acc(g_two, m.at(3, 1).rational_part());
  }
  CongruenceLevel lvl;
  if (d3 == 1) {
    lvl.d1 = mp::gcd(g_zero, g_diag1);
    lvl.d2 = mp::gcd(lvl.d1, g_two);
    return lvl;
  }
  lvl.three_parameter = true;
  lvl.d3 = d3;
  if (g_zero == 0) {
    lvl.d1 = d3 * g_diag1;  // unconstrained zero slots; diag pattern decides
  } else {
    // largest divisor of the zero-slot gcd compatible with the diag pattern
    BigInt best = 0;
    for (BigInt t = 1; t * t <= g_zero; ++t) {
      if (g_zero % t != 0) continue;
      for (BigInt cand : {BigInt(t), BigInt(g_zero / t)}) {
        if (cand % d3 != 0) continue;
        BigInt q = cand / d3;
        bool ok = (g_diag1 == 0) || (q != 0 && g_diag1 % q == 0);
        if (ok && cand > best) best = cand;
      }
    }
    lvl.d1 = best;
  }
  lvl.d2 = mp::gcd(lvl.d1, g_two);
  return lvl;
}

bool implicit_congruence_check(const ExactMatrix& m, const CongruenceLevel& level) {
  auto e = [&](int i, int j) { return m.at(i - 1, j - 1).rational_part(); };
  auto cong = [](const Rational& x, const BigInt& mod) {
    if (mod == 0) return x == 0;
    if (!is_integer(x)) return false;
    return numerator(x) % mod == 0;
  };
  // The two congruences that pass through the (1,3) slot weaken by its
  // allowed denominator in the three-parameter family.
  BigInt m1 = level.three_parameter && level.d3 != 0 ? level.d1 / level.d3 : level.d1;
  if (!cong(e(2, 2) * e(4, 4) - e(2, 4) * e(4, 2) - 1, level.d1)) return false;
  if (!cong(e(2, 3) - (e(1, 4) * e(2, 2) - e(1, 2) * e(2, 4)), m1)) return false;
  if (!cong(e(4, 3) - (e(1, 4) * e(4, 2) - e(1, 2) * e(4, 4)), m1)) return false;
  if (!cong(e(1, 2) + e(4, 3), level.d2)) return false;
  return true;
}

bool in_congruence_level(const ExactMatrix& m, const CongruenceLevel& level) {
  if (m.rows() != 4 || m.cols() != 4 || !m.is_rational()) return false;
  auto cong = [](const Rational& x, const BigInt& mod) {
    if (!is_integer(x)) return false;
    if (mod == 0) return x == 0;
    return numerator(x) % mod == 0;
  };
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const Rational& q = m.at(i, j).rational_part();
      if (i == 0 && j == 2) {
        if (level.three_parameter) {
          if (!is_integer(q * level.d3)) return false;
        } else if (!is_integer(q)) {
          return false;
        }
        continue;
      }
      if (!is_integer(q)) return false;
    }
  BigInt diag_mod = level.three_parameter ? level.d1 / level.d3 : level.d1;
  if (!cong(m.at(0, 0).rational_part() - 1, diag_mod)) return false;
  if (!cong(m.at(2, 2).rational_part() - 1, diag_mod)) return false;
  for (auto [i, j] : {std::pair<int, int>{1, 0}, {2, 0}, {3, 0}, {2, 1}, {2, 3}})
    if (!cong(m.at(i, j).rational_part(), level.d1)) return false;
  if (!cong(m.at(1, 1).rational_part() - 1, level.d2)) return false;
  if (!cong(m.at(3, 3).rational_part() - 1, level.d2)) return false;
  if (!cong(m.at(3, 1).rational_part(), level.d2)) return false;
  return true;
}

BigInt group_index(const CongruenceLevel& level) {
  if (level.three_parameter)
    throw std::invalid_argument("index formula covers the two-parameter family");
  if (level.d1 == 0 || level.d2 == 0 || level.d1 % level.d2 != 0)
    throw std::invalid_argument("index formula needs d2 | d1, both positive");
  Rational idx = Rational(mp::pow(level.d1, 4)) * Rational(mp::pow(level.d2, 2));
  for (const auto& [p, e] : factorize(level.d1))
    idx *= Rational(mp::pow(p, 4) - 1, mp::pow(p, 4));
  for (const auto& [p, e] : factorize(level.d2))
    idx *= Rational(mp::pow(p, 2) - 1, mp::pow(p, 2));
  return numerator(idx);
}

BigInt sp4_mod_order(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("modulus must be positive");
  Rational ord = Rational(mp::pow(n, 10));
  for (const auto& [p, e] : factorize(n)) {
    ord *= Rational(mp::pow(p, 2) - 1, mp::pow(p, 2));
    ord *= Rational(mp::pow(p, 4) - 1, mp::pow(p, 4));
  }
  return numerator(ord);
}

std::vector<ScaledRational> vanishing_cycle(const ExactMatrix& t) {
  std::size_t n = t.rows();
  ExactMatrix d = t - ExactMatrix::identity(n);
  ExactMatrix zero(n, n);
  if (d * d != zero || d == zero)
    throw std::invalid_argument("matrix is not unipotent of rank one");
  // pick the reference row through an entry with invertible rational part
  std::size_t rr = n, rc = n;
  for (std::size_t i = 0; i < n && rr == n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d.at(i, j).rational_part() != 0) {
        rr = i;
        rc = j;
        break;
      }
  if (rr == n) throw std::invalid_argument("no invertible pivot in T - I");
  std::vector<ScaledRational> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = d.at(rr, j);
  // rank one: every row must be the reference row times a scalar
  for (std::size_t i = 0; i < n; ++i) {
    ScaledRational lam = d.at(i, rc) / v[rc];
    for (std::size_t j = 0; j < n; ++j)
      if (!(d.at(i, j) == lam * v[j]))
        throw std::invalid_argument("matrix is not unipotent of rank one");
  }
  // normalize: first nonzero entry from the right gets a positive leading part
  for (std::size_t j = n; j-- > 0;) {
    if (v[j].is_zero()) continue;
    Rational lead = v[j].coeff(0);
    if (lead == 0) lead = v[j].coeff(1);
    if (lead == 0) lead = v[j].coeff(2);
    if (lead < 0)
      for (auto& x : v) x = -x;
    break;
  }
  return v;
}

namespace {

Poly<ScaledRational> dm_quartic(const Invariants& inv) {
  Rational k = inv.k();
  Rational d(inv.d);
  std::vector<ScaledRational> c{ScaledRational(1), ScaledRational(k - 4),
                                ScaledRational(6 - 2 * k + d), ScaledRational(k - 4),
                                ScaledRational(1)};
  return Poly<ScaledRational>(c);
}

}  // namespace

bool dm_charpoly_check(const ExactMatrix& t_inf, const Invariants& inv) {
  return t_inf.charpoly() == dm_quartic(inv);
}

bool dm_charpoly_check(const CMatrix& t_inf, const Invariants& inv, const BigFloat& tol) {
  auto cp = t_inf.charpoly();  // c_0 .. c_n of det(xI - A)
  auto expect = dm_quartic(inv);
  if (cp.size() != 5) return false;
  unsigned d = t_inf.precision() ? t_inf.precision() : kDefaultPrecision;
  for (std::size_t i = 0; i < cp.size(); ++i) {
    Rational e = expect.coeff(i).rational_part();
    if ((cp[i] - BigComplex::from_rational(e, d)).abs() > tol) return false;
  }
  return true;
}

FifthOrderParameters theorem3_parameters(const Rational& A, const Rational& B) {
  struct Row {
    Rational a, b, a2, c2, xp;
    long scale;
  };
  static const std::vector<Row> rows = {
      {{1, 2}, {1, 2}, {25, 36}, {64, 1}, {10, 1}, 1024},
      {{1, 2}, {1, 4}, {8, 9}, {32, 1}, {24, 1}, 4096},
      {{1, 4}, {1, 6}, {289, 288}, {8, 1}, {80, 1}, 110592},
      {{1, 3}, {1, 4}, {27, 32}, {24, 1}, {28, 1}, 6912},
      {{1, 3}, {1, 6}, {75, 64}, {12, 1}, {70, 1}, 46656},
      {{1, 8}, {3, 8}, {529, 288}, {8, 1}, {150, 1}, 262144},
  };
  for (const auto& r : rows) {
    if (!((r.a == A && r.b == B) || (r.a == B && r.b == A))) continue;
    FifthOrderParameters p;
    p.a2 = r.a2;
    p.c2 = r.c2;
    p.xp = r.xp;
    p.scale = r.scale;
    Rational prod = r.a2 * r.c2;
    BigInt sn = mp::sqrt(numerator(prod)), sd = mp::sqrt(denominator(prod));
    if (sn * sn != numerator(prod) || sd * sd != denominator(prod))
      throw std::logic_error("a*c is not rational");
    p.ac = Rational(sn, sd);
    return p;
  }
  throw std::invalid_argument("parameters outside the classified fifth-order list");
}

std::pair<ExactMatrix, ExactMatrix> theorem3_pair(const Rational& A, const Rational& B) {
  FifthOrderParameters p = theorem3_parameters(A, B);
  ExactMatrix t0(5, 5);
  for (int i = 0; i < 5; ++i) {
    Rational f(1);
    for (int j = i; j < 5; ++j) {
      if (j > i) f /= (j - i);
      t0.at(i, j) = ScaledRational(f);
    }
  }
  ScaledRational x(0, p.xp, 0);
  Rational one_m_a2 = 1 - p.a2;
  // b = 2 (1 - a^2) / c, the value forced on the closed form by the exact
  // characteristic polynomial of T_conifold * T_0.
  Rational ab = 2 * p.ac * one_m_a2 / p.c2;
  Rational b2 = 4 * one_m_a2 * one_m_a2 / p.c2;
  ExactMatrix tc(5, 5);
  tc.at(0, 0) = ScaledRational(p.a2);
  tc.at(0, 2) = ScaledRational(-ab);
  tc.at(0, 3) = ScaledRational(one_m_a2) * x;
  tc.at(0, 4) = ScaledRational(-b2 / 2);
  tc.at(1, 0) = ScaledRational(-p.c2 / 2) * x;
  tc.at(1, 1) = ScaledRational(1);
  tc.at(1, 2) = ScaledRational(-p.ac) * x;
  tc.at(1, 3) = ScaledRational(p.c2 / 2) * x * x;
  tc.at(1, 4) = ScaledRational(-one_m_a2) * x;
  tc.at(2, 0) = ScaledRational(-p.ac);
  tc.at(2, 2) = ScaledRational(1 - 2 * p.a2);
  tc.at(2, 3) = ScaledRational(p.ac) * x;
  tc.at(2, 4) = ScaledRational(-ab);
  tc.at(3, 3) = ScaledRational(1);
  tc.at(4, 0) = ScaledRational(-p.c2 / 2);
  tc.at(4, 2) = ScaledRational(-p.ac);
  tc.at(4, 3) = ScaledRational(p.c2 / 2) * x;
  tc.at(4, 4) = ScaledRational(p.a2);
  return {t0, tc};
}

}  // namespace pfm

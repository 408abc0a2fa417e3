// SPDX-License-Identifier: Apache-2.0
#include "pfm/scaled.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <sstream>

namespace pfm {

namespace mp = boost::multiprecision;
using nlohmann::json;

ScaledRational operator+(const ScaledRational& a, const ScaledRational& b) {
  return {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2]};
}

ScaledRational operator-(const ScaledRational& a, const ScaledRational& b) {
  return {a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2]};
}

ScaledRational operator*(const ScaledRational& a, const ScaledRational& b) {
  // reduction mod u^3 is a ring homomorphism, so products are exact for
  // every quantity of degree <= 2, which covers all matrix forms here
  return {a.c_[0] * b.c_[0],
          a.c_[0] * b.c_[1] + a.c_[1] * b.c_[0],
          a.c_[0] * b.c_[2] + a.c_[1] * b.c_[1] + a.c_[2] * b.c_[0]};
}

ScaledRational ScaledRational::inverse() const {
  if (c_[0] == 0)
    throw SingularMatrix("scale-ring element with zero rational part is not invertible");
  // (a0 + v)^-1 = a0^-1 (1 - v/a0 + (v/a0)^2) with v nilpotent mod u^3
  Rational i0 = 1 / c_[0];
  Rational b1 = -c_[1] * i0 * i0;
  Rational b2 = (c_[1] * c_[1] * i0 - c_[2]) * i0 * i0;
  return {i0, b1, b2};
}

ScaledRational operator/(const ScaledRational& a, const ScaledRational& b) {
  if (b.is_rational()) {
    if (b.c_[0] == 0) throw SingularMatrix("division by zero in scale ring");
    Rational i0 = 1 / b.c_[0];
    return {a.c_[0] * i0, a.c_[1] * i0, a.c_[2] * i0};
  }
  return a * b.inverse();
}

BigComplex ScaledRational::to_complex(const Constants& k) const {
  unsigned p = k.precision;
  BigComplex r = BigComplex::from_rational(c_[0], p);
  if (c_[1] != 0) r += BigComplex::from_rational(c_[1], p) * k.unit;
  if (c_[2] != 0) r += BigComplex::from_rational(c_[2], p) * k.unit * k.unit;
  return r;
}

std::string ScaledRational::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < 3; ++k) {
    if (c_[k] == 0) continue;
    Rational v = c_[k];
    if (!first) {
      os << (v < 0 ? "-" : "+");
      if (v < 0) v = -v;
    }
    first = false;
    bool unit_only = (k > 0 && mp::abs(numerator(v)) == 1 && denominator(v) == 1);
    if (k == 0 || !unit_only) {
      os << render_rational(v);
    } else if (v < 0) {
      os << "-";
    }
    if (k >= 1) {
      if (!unit_only) os << "*";
      os << (k == 1 ? "u" : "u^2");
    }
  }
  return os.str();
}

ScaledRational ScaledRational::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw ParseError("empty scale-ring literal");
  // split into signed terms
  Rational out[3] = {Rational(0), Rational(0), Rational(0)};
  std::size_t i = 0;
  while (i < t.size()) {
    int sign = 1;
    while (i < t.size() && (t[i] == '+' || t[i] == '-')) {
      if (t[i] == '-') sign = -sign;
      ++i;
    }
    std::size_t j = i;
    while (j < t.size() && t[j] != '+' && t[j] != '-') ++j;
    std::string term = t.substr(i, j - i);
    if (term.empty()) throw ParseError("bad scale-ring literal: " + text);
    int power = 0;
    std::string coeff = term;
    auto upos = term.find('u');
    if (upos != std::string::npos) {
      power = 1;
      std::string rest = term.substr(upos + 1);
      if (rest == "^2") power = 2;
      else if (!rest.empty()) throw ParseError("bad scale-ring literal: " + text);
      coeff = term.substr(0, upos);
      if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
      if (coeff.empty()) coeff = "1";
    }
    out[power] += Rational(sign) * parse_rational(coeff);
    i = j;
  }
  return {out[0], out[1], out[2]};
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ScaledRational(1);
  return m;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix shape mismatch");
  ExactMatrix r(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
  return r;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix shape mismatch");
  ExactMatrix r(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
  return r;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  ExactMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const ScaledRational& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

bool ExactMatrix::is_rational() const {
  for (const auto& e : a_)
    if (!e.is_rational()) return false;
  return true;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

// Gauss-Jordan over the ring. A pivot needs a nonzero rational part; among
// candidates in a column, a purely rational entry is preferred so most
// eliminations stay in Q.
ExactMatrix ExactMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = rows_;
  ExactMatrix a = *this, inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = col; r < n; ++r) {
      const auto& e = a.at(r, col);
      if (e.rational_part() == 0) continue;
      if (pivot == n || (!a.at(pivot, col).is_rational() && e.is_rational())) pivot = r;
      if (e.is_rational()) break;
    }
    if (pivot == n) throw SingularMatrix("matrix is singular over the scale ring");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a.at(pivot, j), a.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    }
    ScaledRational d = a.at(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a.at(col, j) = a.at(col, j) / d;
      inv.at(col, j) = inv.at(col, j) / d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      ScaledRational f = a.at(r, col);
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a.at(r, j) -= f * a.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

ExactMatrix ExactMatrix::pow(long e) const {
  if (rows_ != cols_) throw std::invalid_argument("power of non-square matrix");
  ExactMatrix base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  ExactMatrix r = identity(rows_);
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

// Laplace expansion; fine for the 4x4 and 5x5 sizes this library handles.
static ScaledRational det_rec(const ExactMatrix& m, std::vector<std::size_t>& cols,
                              std::size_t row) {
  if (cols.size() == 1) return m.at(row, cols[0]);
  ScaledRational acc;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const ScaledRational& e = m.at(row, cols[k]);
    if (e.is_zero()) continue;
    std::vector<std::size_t> rest;
    rest.reserve(cols.size() - 1);
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (j != k) rest.push_back(cols[j]);
    ScaledRational sub = det_rec(m, rest, row + 1);
    acc += ((k % 2) ? -e : e) * sub;
  }
  return acc;
}

ScaledRational ExactMatrix::det() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  std::vector<std::size_t> cols(cols_);
  for (std::size_t i = 0; i < cols_; ++i) cols[i] = i;
  return det_rec(*this, cols, 0);
}

Poly<ScaledRational> ExactMatrix::charpoly() const {
  if (rows_ != cols_) throw std::invalid_argument("charpoly of non-square matrix");
  // det(xI - A) by Laplace expansion over Q[u]/(u^3)[x]
  std::size_t n = rows_;
  using P = Poly<ScaledRational>;
  std::vector<std::vector<P>> m(n, std::vector<P>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<ScaledRational> c{-at(i, j)};
      if (i == j) c.push_back(ScaledRational(1));
      m[i][j] = P(std::move(c));
    }
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  struct Rec {
    const std::vector<std::vector<P>>& m;
    P run(std::vector<std::size_t>& cs, std::size_t row) {
      if (cs.size() == 1) return m[row][cs[0]];
      P acc;
      for (std::size_t k = 0; k < cs.size(); ++k) {
        if (m[row][cs[k]].is_zero()) continue;
        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < cs.size(); ++j)
          if (j != k) rest.push_back(cs[j]);
        P term = m[row][cs[k]] * run(rest, row + 1);
        acc = (k % 2) ? acc - term : acc + term;
      }
      return acc;
    }
  } rec{m};
  return rec.run(cols, 0);
}

ExactMatrix parse_exact_matrix(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad matrix JSON: ") + e.what());
  }
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].empty())
    throw ParseError("matrix JSON lacks entries");
  const auto& rows = j["entries"];
  std::size_t nr = rows.size(), nc = rows[0].size();
  ExactMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (!rows[i].is_array() || rows[i].size() != nc)
      throw ParseError("ragged matrix JSON");
    for (std::size_t k = 0; k < nc; ++k) {
      if (!rows[i][k].is_string()) throw ParseError("matrix entries must be strings");
      m.at(i, k) = ScaledRational::parse(rows[i][k].get<std::string>());
    }
  }
  return m;
}

std::string render_exact_matrix(const ExactMatrix& m) {
  json rows = json::array();
  bool uses_unit = false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& e = m.at(i, j);
      if (!e.is_rational()) uses_unit = true;
      row.push_back(e.str());
    }
    rows.push_back(std::move(row));
  }
  json out{{"entries", std::move(rows)}};
  if (uses_unit) out["unit"] = "zeta3_over_2pii_cubed";
  return out.dump();
}

std::vector<std::vector<BigComplex>> to_complex_rows(const ExactMatrix& m,
                                                     const Constants& k) {
  std::vector<std::vector<BigComplex>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      rows[i].push_back(m.at(i, j).to_complex(k));
  return rows;
}

ExactMatrix snap_matrix(const std::vector<std::vector<BigComplex>>& m,
                        const Constants& k, const BigInt& max_den,
                        const BigFloat& tol, int max_unit_power) {
  std::size_t nr = m.size(), nc = nr ? m[0].size() : 0;
  ExactMatrix out(nr, nc);
  BigFloat u_im = k.unit.imag();                    // u = i*|u|
  BigFloat u2 = -(u_im * u_im);                     // u^2 is real, negative
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) {
      const BigComplex& z = m[i][j];
      Rational q0(0), q1(0), q2(0);
      if (mp::abs(z.imag()) > tol) {
        if (max_unit_power < 1)
          throw NoRationalFound("entry has an imaginary part but the unit is disallowed");
        q1 = rationalize(BigFloat(z.imag() / u_im), max_den, tol);
      }
      if (mp::abs(z.real()) > tol) {
        try {
          q0 = rationalize(z.real(), max_den, tol);
          // trust a convergent only when it beats the generic approximation
          // quality of its own denominator, else prefer the u^2 reading
          BigFloat den(denominator(q0));
          BigFloat resid = mp::abs(z.real() - rational_to_float(q0, z.real().precision()));
          if (resid > BigFloat("1e-6") / (den * den) && max_unit_power >= 2)
            throw NoRationalFound("untrusted convergent");
        } catch (const NoRationalFound&) {
          if (max_unit_power < 2) throw;
          q0 = 0;
          q2 = rationalize(BigFloat(z.real() / u2), max_den, tol);
        }
      }
      out.at(i, j) = ScaledRational(q0, q1, q2);
    }
  }
  return out;
}

}  // namespace pfm

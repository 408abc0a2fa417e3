// SPDX-License-Identifier: Apache-2.0
#include "pfm/cmatrix.hpp"

#include "pfm/rational.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace pfm {

namespace mp = boost::multiprecision;
using nlohmann::json;

CMatrix CMatrix::identity(std::size_t n, unsigned digits) {
  CMatrix m(n, n, digits);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = BigComplex(1, 0, digits);
  return m;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix shape mismatch");
  CMatrix r(a.rows_, a.cols_, std::min(a.prec_, b.prec_));
  for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
  return r;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix shape mismatch");
  CMatrix r(a.rows_, a.cols_, std::min(a.prec_, b.prec_));
  for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
  return r;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  unsigned p = std::min(a.prec_, b.prec_);
  CMatrix r(a.rows_, b.cols_, p);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigComplex& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

CMatrix operator*(const BigComplex& s, const CMatrix& a) {
  CMatrix r = a;
  for (auto& e : r.a_) e *= s;
  return r;
}

CMatrix CMatrix::solve(const CMatrix& rhs) const {
  if (rows_ != cols_ || rhs.rows_ != rows_)
    throw std::invalid_argument("bad shapes in linear solve");
  std::size_t n = rows_, m = rhs.cols_;
  unsigned p = std::min(prec_, rhs.prec_);
  CMatrix a = *this, x = rhs;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    BigFloat best = a.at(col, col).abs();
    for (std::size_t r = col + 1; r < n; ++r) {
      BigFloat v = a.at(r, col).abs();
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best.is_zero()) throw std::domain_error("singular matrix in linear solve");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(x.at(piv, j), x.at(col, j));
    }
    BigComplex d = a.at(col, col);
    for (std::size_t j = col; j < n; ++j) a.at(col, j) /= d;
    for (std::size_t j = 0; j < m; ++j) x.at(col, j) /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      BigComplex f = a.at(r, col);
      if (f.is_zero()) continue;
      for (std::size_t j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
      for (std::size_t j = 0; j < m; ++j) x.at(r, j) -= f * x.at(col, j);
    }
  }
  (void)p;
  return x;
}

CMatrix CMatrix::inverse() const { return solve(identity(rows_, prec_)); }

BigFloat CMatrix::max_norm() const {
  BigFloat m = make_float(prec_);
  for (const auto& e : a_) {
    BigFloat v = e.abs();
    if (v > m) m = v;
  }
  return m;
}

BigFloat CMatrix::max_diff(const CMatrix& other) const {
  return (*this - other).max_norm();
}

std::vector<BigComplex> CMatrix::charpoly() const {
  if (rows_ != cols_) throw std::invalid_argument("charpoly of non-square matrix");
  std::size_t n = rows_;
  // Faddeev-LeVerrier: M_1 = A, c_{n-k} from traces
  std::vector<BigComplex> c(n + 1, BigComplex(0, 0, prec_));
  c[n] = BigComplex(1, 0, prec_);
  CMatrix m = *this;
  for (std::size_t k = 1; k <= n; ++k) {
    BigComplex tr(0, 0, prec_);
    for (std::size_t i = 0; i < n; ++i) tr += m.at(i, i);
    BigComplex ck = tr / BigComplex(-static_cast<long>(k), 0, prec_);
    c[n - k] = ck;
    if (k == n) break;
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) += ck;
    m = *this * m;
  }
  return c;
}

CMatrix parse_cmatrix(const std::string& json_text, unsigned digits) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad matrix JSON: ") + e.what());
  }
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw ParseError("matrix JSON needs rows, cols and entries");
  std::size_t nr = j["rows"].get<std::size_t>(), nc = j["cols"].get<std::size_t>();
  const auto& rows = j["entries"];
  if (!rows.is_array() || rows.size() != nr) throw ParseError("bad matrix row count");
  CMatrix m(nr, nc, digits);
  auto part = [&](const json& v) -> BigFloat {
    if (v.is_string()) {
      BigFloat x(v.get<std::string>(), digits);
      return x;
    }
    BigFloat x(v.get<double>(), digits);
    return x;
  };
  for (std::size_t i = 0; i < nr; ++i) {
    if (!rows[i].is_array() || rows[i].size() != nc) throw ParseError("ragged matrix JSON");
    for (std::size_t k = 0; k < nc; ++k) {
      const json& e = rows[i][k];
      if (!e.is_object() || !e.contains("re") || !e.contains("im"))
        throw ParseError("matrix entry needs re and im");
      m.at(i, k) = BigComplex(part(e["re"]), part(e["im"]), digits);
    }
  }
  return m;
}

std::string render_cmatrix(const CMatrix& m, unsigned digits) {
  unsigned d = digits ? digits : m.precision();
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const BigComplex& e = m.at(i, j);
      row.push_back(json{{"re", e.real().str(d)}, {"im", e.imag().str(d)}});
    }
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}}.dump();
}

std::vector<BigComplex> poly_roots(const std::vector<BigComplex>& coeffs,
                                   unsigned digits, unsigned max_iter) {
  std::vector<BigComplex> c = coeffs;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.size() < 2) return {};
  std::size_t n = c.size() - 1;
  BigComplex lead = c.back();
  for (auto& v : c) v /= lead;
  auto eval = [&](const BigComplex& x) {
    BigComplex acc(0, 0, digits);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  };
  // initial guesses on a slightly irrational spiral
  std::vector<BigComplex> z(n);
  BigComplex seed(BigFloat("0.4", digits), BigFloat("0.9", digits), digits);
  BigComplex w(1, 0, digits);
  for (std::size_t i = 0; i < n; ++i) {
    w *= seed;
    z[i] = w;
  }
  BigFloat tol = boost::multiprecision::pow(BigFloat(10, digits),
                                            -static_cast<long>(digits) + 5);
  for (unsigned it = 0; it < max_iter; ++it) {
    BigFloat move = make_float(digits);
    for (std::size_t i = 0; i < n; ++i) {
      BigComplex num = eval(z[i]);
      BigComplex den(1, 0, digits);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      if (den.is_zero()) {
        z[i] += BigComplex(BigFloat("1e-3", digits), BigFloat("1e-3", digits), digits);
        continue;
      }
      BigComplex delta = num / den;
      z[i] -= delta;
      BigFloat d = delta.abs();
      if (d > move) move = d;
    }
    if (move < tol) break;
  }
  return z;
}

}  // namespace pfm

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pfm/bigcomplex.hpp"

#include <vector>

namespace pfm {

// Dense complex matrix at a uniform working precision.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols, unsigned digits)
      : rows_(rows), cols_(cols), prec_(digits),
        a_(rows * cols, BigComplex(0, 0, digits)) {}
  static CMatrix identity(std::size_t n, unsigned digits);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  unsigned precision() const { return prec_; }

  BigComplex& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const BigComplex& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(const BigComplex& s, const CMatrix& a);

  CMatrix inverse() const;               // partial-pivot Gauss-Jordan
  CMatrix solve(const CMatrix& rhs) const;  // this * X = rhs
  BigFloat max_norm() const;             // max entry modulus
  BigFloat max_diff(const CMatrix& other) const;

  // Characteristic polynomial coefficients c_0..c_n of det(xI - A),
  // computed by the trace method.
  std::vector<BigComplex> charpoly() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  unsigned prec_ = kDefaultPrecision;
  std::vector<BigComplex> a_;
};

// Floating matrix JSON: {"rows":r,"cols":c,"entries":[[{"re":"...","im":"..."}]]}.
CMatrix parse_cmatrix(const std::string& json_text, unsigned digits);
std::string render_cmatrix(const CMatrix& m, unsigned digits = 0);

// Roots of a monic-normalizable polynomial by the Durand-Kerner iteration.
std::vector<BigComplex> poly_roots(const std::vector<BigComplex>& coeffs,
                                   unsigned digits, unsigned max_iter = 400);

}  // namespace pfm

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pfm/constants.hpp"
#include "pfm/poly.hpp"
#include "pfm/rationalize.hpp"

#include <array>
#include <string>
#include <vector>

namespace pfm {

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element of Q[u]/(u^3) where u is the transcendental scale constant
// zeta(3)/(2*pi*i)^3. Degree-2 truncation is enough for every matrix entry
// this library produces; reduction mod u^3 keeps those exact.
class ScaledRational {
 public:
  ScaledRational() = default;
  ScaledRational(long v) : c_{Rational(v), 0, 0} {}  // NOLINT: implicit by design
  ScaledRational(Rational v) : c_{std::move(v), 0, 0} {}
  ScaledRational(Rational c0, Rational c1, Rational c2)
      : c_{std::move(c0), std::move(c1), std::move(c2)} {}
  static ScaledRational unit() { return ScaledRational(0, 1, 0); }

  const Rational& coeff(int k) const { return c_[k]; }
  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }
  bool is_rational() const { return c_[1] == 0 && c_[2] == 0; }
  const Rational& rational_part() const { return c_[0]; }

  friend ScaledRational operator+(const ScaledRational& a, const ScaledRational& b);
  friend ScaledRational operator-(const ScaledRational& a, const ScaledRational& b);
  friend ScaledRational operator*(const ScaledRational& a, const ScaledRational& b);
  friend ScaledRational operator/(const ScaledRational& a, const ScaledRational& b);
  ScaledRational operator-() const { return ScaledRational(-c_[0], -c_[1], -c_[2]); }
  ScaledRational& operator+=(const ScaledRational& b) { return *this = *this + b; }
  ScaledRational& operator-=(const ScaledRational& b) { return *this = *this - b; }
  ScaledRational& operator*=(const ScaledRational& b) { return *this = *this * b; }
  friend bool operator==(const ScaledRational&, const ScaledRational&) = default;

  ScaledRational inverse() const;  // requires nonzero rational part
  BigComplex to_complex(const Constants& k) const;
  std::string str() const;
  static ScaledRational parse(const std::string& text);

 private:
  std::array<Rational, 3> c_{Rational(0), Rational(0), Rational(0)};
};

// Dense matrix over the truncated scale ring.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}
  static ExactMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  ScaledRational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const ScaledRational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

  bool is_identity() const { return *this == identity(rows_); }
  bool is_rational() const;
  ExactMatrix transpose() const;
  ExactMatrix inverse() const;  // Gauss-Jordan, prefers rational pivots
  ExactMatrix pow(long e) const;  // e may be negative
  ScaledRational det() const;

  // Characteristic polynomial det(x*I - A), leading coefficient 1.
  Poly<ScaledRational> charpoly() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<ScaledRational> a_;
};

// JSON round-trip. Exact matrices serialize as {"entries": [[string]]},
// plus {"unit": "zeta3_over_2pii_cubed"} whenever any entry uses u.
ExactMatrix parse_exact_matrix(const std::string& json_text);
std::string render_exact_matrix(const ExactMatrix& m);

std::vector<std::vector<BigComplex>> to_complex_rows(const ExactMatrix& m,
                                                     const Constants& k);

// Entrywise rationalization of a complex matrix into the scale ring.
// which_units selects the allowed powers of u per entry (0 = rational only,
// 1 = allow u, 2 = allow u and u^2); entries are tried low power first.
ExactMatrix snap_matrix(const std::vector<std::vector<BigComplex>>& m,
                        const Constants& k, const BigInt& max_den,
                        const BigFloat& tol, int max_unit_power = 1);

}  // namespace pfm

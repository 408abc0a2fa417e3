// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pfm/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace pfm {

// Dense univariate polynomial over a field-like coefficient type.
// Trailing zeros are normalized away; the zero polynomial has empty storage
// and degree() reports the -1 sentinel.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }
  static Poly constant(T v) {
    Poly p;
    if (!(v == T(0))) p.c_.push_back(std::move(v));
    return p;
  }
  static Poly monomial(std::size_t k, T v = T(1)) {
    Poly p;
    if (!(v == T(0))) {
      p.c_.assign(k + 1, T(0));
      p.c_[k] = std::move(v);
    }
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }

  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const T& leading() const { return c_.back(); }

  template <class X>
  X operator()(const X& x) const {
    X acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + X(c_[i]);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Poly(std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const T& s) {
    std::vector<T> r = a.c_;
    for (auto& x : r) x *= s;
    return Poly(std::move(r));
  }
  Poly operator-() const { return *this * T(-1); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  // Taylor shift: returns p(x0 + t) as a polynomial in t.
  Poly shifted(const T& x0) const {
    Poly r;
    for (std::size_t i = c_.size(); i-- > 0;) {
      r = r * Poly({x0, T(1)});
      r = r + Poly::constant(c_[i]);
    }
    return r;
  }

  // Reverses coefficients against an explicit degree bound:
  // returns x^deg_bound * p(1/x).
  Poly reversed(std::size_t deg_bound) const {
    std::vector<T> r(deg_bound + 1, T(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[deg_bound - i] = c_[i];
    return Poly(std::move(r));
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

using RationalPoly = Poly<Rational>;

// Exact division helpers over Q[z].
RationalPoly poly_divexact(const RationalPoly& a, const RationalPoly& b);
std::pair<RationalPoly, RationalPoly> poly_divmod(const RationalPoly& a, const RationalPoly& b);
RationalPoly poly_gcd(RationalPoly a, RationalPoly b);  // monic gcd

// Rational function num/den over Q[z], kept reduced with monic denominator.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(RationalPoly::constant(1)) {}
  RationalFunction(RationalPoly num, RationalPoly den);

  const RationalPoly& num() const { return num_; }
  const RationalPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction derivative() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const Rational& s);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

 private:
  void reduce();
  RationalPoly num_, den_;
};

// Multiplicity of x0 as a root of p (0 when p(x0) != 0).
int root_multiplicity(const RationalPoly& p, const Rational& x0);

}  // namespace pfm

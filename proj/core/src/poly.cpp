// SPDX-License-Identifier: Apache-2.0
#include "pfm/poly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pfm {

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw ParseError("empty rational literal");
  try {
    Rational q(t);
    if (denominator(q) == 0) throw ParseError("zero denominator: " + s);
    return q;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad rational literal: " + s);
  }
}

std::string render_rational(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

std::pair<RationalPoly, RationalPoly> poly_divmod(const RationalPoly& a,
                                                  const RationalPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  RationalPoly r = a;
  std::vector<Rational> q;
  int db = b.degree();
  if (r.degree() >= db) q.resize(r.degree() - db + 1, Rational(0));
  const Rational& lead = b.coeff(db);
  while (r.degree() >= db) {
    int dr = r.degree();
    Rational f = r.coeff(dr) / lead;
    q[dr - db] = f;
    std::vector<Rational> rc = r.coeffs();
    for (int i = 0; i <= db; ++i) rc[dr - db + i] -= f * b.coeff(i);
    r = RationalPoly(std::move(rc));
  }
  return {RationalPoly(std::move(q)), r};
}

RationalPoly poly_divexact(const RationalPoly& a, const RationalPoly& b) {
  auto [q, r] = poly_divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
  RationalPoly x = std::move(a), y = std::move(b);
  while (!y.is_zero()) {
    auto [q, r] = poly_divmod(x, y);
    x = y;
    y = r;
  }
  if (x.is_zero()) return x;
  // monic normalization
  Rational lead = x.coeff(x.degree());
  std::vector<Rational> c = x.coeffs();
  for (auto& v : c) v /= lead;
  return RationalPoly(std::move(c));
}

int root_multiplicity(const RationalPoly& p, const Rational& x0) {
  if (p.is_zero()) throw std::domain_error("root multiplicity of zero polynomial");
  RationalPoly q = p;
  int m = 0;
  while (!q.is_zero() && q(x0) == 0) {
    // deflate by (x - x0) via synthetic division
    int d = q.degree();
    std::vector<Rational> out(d, Rational(0));
    std::vector<Rational> c = q.coeffs();
    Rational acc = c[d];
    for (int i = d - 1; i >= 0; --i) {
      out[i] = acc;
      acc = c[i] + acc * x0;
    }
    q = RationalPoly(std::move(out));
    ++m;
  }
  return m;
}

RationalFunction::RationalFunction(RationalPoly num, RationalPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  reduce();
}

void RationalFunction::reduce() {
  if (num_.is_zero()) {
    den_ = RationalPoly::constant(Rational(1));
    return;
  }
  RationalPoly g = poly_gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = poly_divexact(num_, g);
    den_ = poly_divexact(den_, g);
  }
  Rational lead = den_.coeff(den_.degree());
  if (lead != 1) {
    auto scale = [&](const RationalPoly& p) {
      std::vector<Rational> c = p.coeffs();
      for (auto& v : c) v /= lead;
      return RationalPoly(std::move(c));
    };
    num_ = scale(num_);
    den_ = scale(den_);
  }
}

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(),
                          den_ * den_);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num() * b.den() - b.num() * a.den(), a.den() * b.den());
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num() * b.num(), a.den() * b.den());
}

RationalFunction operator*(const RationalFunction& a, const Rational& s) {
  return RationalFunction(a.num() * s, a.den());
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.num() == b.num() && a.den() == b.den();
}

}  // namespace pfm

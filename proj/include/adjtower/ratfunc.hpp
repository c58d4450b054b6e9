#pragma once

#include <string>

#include "adjtower/poly.hpp"

namespace adjtower {

// Element of Q(x) in normal form. Internally scale * N / D with N, D
// primitive integer polynomials with positive leading coefficients and
// gcd(N, D) = 1; zero is scale 0 with N = D = 1. The public view is a
// numerator over a monic denominator.
class RatFunc {
 public:
  RatFunc() : s_(0), n_{1}, d_{1} {}
  RatFunc(const Rational& c);  // NOLINT
  RatFunc(long c) : RatFunc(Rational(c)) {}
  RatFunc(const Poly& p);  // NOLINT
  RatFunc(const Poly& num, const Poly& den);

  static RatFunc x() { return RatFunc(Poly::x()); }
  // scale * n / d with n, d arbitrary integer polynomials (d nonzero).
  static RatFunc from_z(const Rational& scale, const zpoly::ZPoly& n, const zpoly::ZPoly& d);

  bool is_zero() const { return sgn(s_) == 0; }
  bool is_one() const { return s_ == 1 && zpoly::is_one(n_) && zpoly::is_one(d_); }
  bool is_poly() const { return d_.size() == 1; }
  bool is_constant() const { return n_.size() == 1 && d_.size() == 1; }

  Poly num() const;  // numerator for the monic denominator
  Poly den() const;  // monic
  Rational constant_value() const;  // requires is_constant()
  int num_degree() const { return is_zero() ? -1 : static_cast<int>(n_.size()) - 1; }
  int den_degree() const { return static_cast<int>(d_.size()) - 1; }

  const Rational& scale() const { return s_; }
  const zpoly::ZPoly& znum() const { return n_; }
  const zpoly::ZPoly& zden() const { return d_; }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc scaled(const Rational& c) const;
  RatFunc inverse() const;
  RatFunc pow(int e) const;

  bool operator==(const RatFunc& o) const { return s_ == o.s_ && n_ == o.n_ && d_ == o.d_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc derivative() const;
  Rational eval(const Rational& v) const;  // throws at a pole
  RatFunc compose(const RatFunc& q) const;

  // "num/den" (parenthesized where needed) or the bare polynomial.
  std::string str() const;

 private:
  RatFunc(Rational s, zpoly::ZPoly n, zpoly::ZPoly d) : s_(std::move(s)), n_(std::move(n)), d_(std::move(d)) {}
  Rational s_;
  zpoly::ZPoly n_, d_;
};

}  // namespace adjtower

#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "adjtower/zpoly.hpp"

namespace adjtower {

using Integer = mpz_class;
using Rational = mpq_class;

// Dense univariate polynomial over Q, lowest degree first.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT: constants convert implicitly
  Poly(long c) : Poly(Rational(c)) {}
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs) : Poly(std::vector<Rational>(coeffs)) {}

  static Poly x();
  static Poly monomial(int k, const Rational& c = 1);
  // c * p / (positive) d built from the integer form.
  static Poly from_z(const zpoly::ZPoly& p, const Rational& c = 1);

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Rational coeff(int i) const;
  Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  Poly scaled(const Rational& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly derivative() const;
  Poly monic() const;
  Rational eval(const Rational& v) const;
  // Composition p(q).
  Poly compose(const Poly& q) const;

  // Integer form: returns (c, P) with *this = c * P, P primitive with lc > 0.
  std::pair<Rational, zpoly::ZPoly> split() const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Euclidean division over Q.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // monic (zero if both zero)
Poly lcm(const Poly& a, const Poly& b);  // monic
Poly pow(const Poly& a, unsigned e);
// Squarefree decomposition: returns (f_i, i) with a = lc * prod f_i^i, f_i monic.
std::vector<std::pair<Poly, int>> squarefree(const Poly& a);
// Resultant over Q.
Rational resultant(const Poly& a, const Poly& b);

std::string rational_str(const Rational& q);

}  // namespace adjtower

#include "adjtower/ratfunc.hpp"

#include <stdexcept>

namespace adjtower {

using zpoly::ZPoly;

RatFunc::RatFunc(const Rational& c) : s_(c), n_{1}, d_{1} { s_.canonicalize(); }

RatFunc::RatFunc(const Poly& p) : s_(0), n_{1}, d_{1} {
  if (p.is_zero()) return;
  auto [c, z] = p.split();
  s_ = c;
  n_ = std::move(z);
}

RatFunc::RatFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  auto [cn, N] = num.split();
  auto [cd, D] = den.split();
  *this = from_z(cn / cd, N, D);
}

RatFunc RatFunc::from_z(const Rational& scale, const ZPoly& n, const ZPoly& d) {
  if (d.empty()) throw std::domain_error("rational function with zero denominator");
  if (n.empty() || sgn(scale) == 0) return RatFunc();
  Integer cn = zpoly::content(n), cd = zpoly::content(d);
  ZPoly N = zpoly::divexact_scalar(n, cn), D = zpoly::divexact_scalar(d, cd);
  Rational s = scale * Rational(cn) / Rational(cd);
  if (D.size() > 1 && N.size() > 1) {
    ZPoly g = zpoly::gcd(N, D);
    if (g.size() > 1) {
      N = zpoly::divexact(N, g);
      D = zpoly::divexact(D, g);
    }
  }
  return RatFunc(std::move(s), std::move(N), std::move(D));
}

Poly RatFunc::num() const {
  if (is_zero()) return Poly();
  return Poly::from_z(n_, s_ / Rational(d_.back()));
}

Poly RatFunc::den() const { return Poly::from_z(d_, Rational(1) / Rational(d_.back())); }

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw std::domain_error("rational function is not constant");
  return is_zero() ? Rational(0) : s_ * n_[0] / d_[0];
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.s_ = -r.s_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const Integer &a1 = s_.get_num(), &b1 = s_.get_den();
  const Integer &a2 = o.s_.get_num(), &b2 = o.s_.get_den();
  Integer k1 = a1 * b2, k2 = a2 * b1;
  Rational sc(1, b1 * b2);
  sc.canonicalize();
  if (d_ == o.d_) {
    ZPoly num = zpoly::add(zpoly::scale(n_, k1), zpoly::scale(o.n_, k2));
    if (num.empty()) return *this = RatFunc();
    return *this = from_z(sc, num, d_);
  }
  ZPoly g = zpoly::gcd(d_, o.d_);
  if (zpoly::is_one(g)) {
    ZPoly num = zpoly::add(zpoly::mul(zpoly::scale(n_, k1), o.d_), zpoly::mul(zpoly::scale(o.n_, k2), d_));
    if (num.empty()) return *this = RatFunc();
    Integer c = zpoly::content(num);
    num = zpoly::divexact_scalar(num, c);
    // gcd(num, d1*d2) = 1 when the summands are reduced and d1, d2 coprime.
    return *this = RatFunc(sc * c, std::move(num), zpoly::mul(d_, o.d_));
  }
  ZPoly d1 = zpoly::divexact(d_, g), d2 = zpoly::divexact(o.d_, g);
  ZPoly num = zpoly::add(zpoly::mul(zpoly::scale(n_, k1), d2), zpoly::mul(zpoly::scale(o.n_, k2), d1));
  if (num.empty()) return *this = RatFunc();
  Integer c = zpoly::content(num);
  num = zpoly::divexact_scalar(num, c);
  ZPoly h = zpoly::gcd(num, g);
  if (h.size() > 1) {
    num = zpoly::divexact(num, h);
    g = zpoly::divexact(g, h);
  }
  ZPoly den = zpoly::mul(zpoly::mul(g, d1), d2);
  Integer cd = zpoly::content(den);
  den = zpoly::divexact_scalar(den, cd);
  return *this = RatFunc(sc * Rational(c) / Rational(cd), std::move(num), std::move(den));
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  Rational s = s_ * o.s_;
  ZPoly n1 = n_, d1 = d_, n2 = o.n_, d2 = o.d_;
  if (n1.size() > 1 && d2.size() > 1) {
    ZPoly g = zpoly::gcd(n1, d2);
    if (g.size() > 1) {
      n1 = zpoly::divexact(n1, g);
      d2 = zpoly::divexact(d2, g);
    }
  }
  if (n2.size() > 1 && d1.size() > 1) {
    ZPoly g = zpoly::gcd(n2, d1);
    if (g.size() > 1) {
      n2 = zpoly::divexact(n2, g);
      d1 = zpoly::divexact(d1, g);
    }
  }
  return *this = RatFunc(std::move(s), zpoly::mul(n1, n2), zpoly::mul(d1, d2));
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero rational function");
  return RatFunc(1 / s_, d_, n_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::scaled(const Rational& c) const {
  if (sgn(c) == 0 || is_zero()) return RatFunc();
  RatFunc r = *this;
  r.s_ *= c;
  return r;
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

RatFunc RatFunc::derivative() const {
  if (is_zero()) return RatFunc();
  if (d_.size() == 1) {
    ZPoly dn = zpoly::derivative(n_);
    if (dn.empty()) return RatFunc();
    return from_z(s_ / d_[0], dn, ZPoly{1});
  }
  // (N/D)' = (N'D - N D') / D^2; only factors of D can cancel, and writing
  // D = g * e with g = gcd(D, D') keeps the intermediate small.
  ZPoly Dp = zpoly::derivative(d_);
  ZPoly g = zpoly::gcd(d_, Dp);
  ZPoly e = zpoly::divexact(d_, g);          // squarefree-ish cofactor
  ZPoly t = zpoly::divexact(zpoly::mul(Dp, e), d_);  // e * D'/D is a polynomial
  ZPoly num = zpoly::sub(zpoly::mul(zpoly::derivative(n_), e), zpoly::mul(n_, t));
  if (num.empty()) return RatFunc();
  return from_z(s_, num, zpoly::mul(d_, e));
}

Rational RatFunc::eval(const Rational& v) const {
  if (is_zero()) return 0;
  Rational dn = 0, dd = 0;
  for (std::size_t i = n_.size(); i-- > 0;) dn = dn * v + Rational(n_[i]);
  for (std::size_t i = d_.size(); i-- > 0;) dd = dd * v + Rational(d_[i]);
  if (sgn(dd) == 0) throw std::domain_error("evaluation at a pole");
  return s_ * dn / dd;
}

RatFunc RatFunc::compose(const RatFunc& q) const {
  RatFunc n, d;
  for (std::size_t i = n_.size(); i-- > 0;) n = n * q + RatFunc(Rational(n_[i]));
  for (std::size_t i = d_.size(); i-- > 0;) d = d * q + RatFunc(Rational(d_[i]));
  return (n / d).scaled(s_);
}

std::string RatFunc::str() const {
  if (is_zero()) return "0";
  Poly n = num();
  if (d_.size() == 1) return n.str();
  // parentheses only where the text would otherwise parse differently
  std::string ns = n.str(), ds = den().str();
  bool simple_num = ns.find(' ') == std::string::npos;
  bool simple_den = ds.find_first_of(" */") == std::string::npos;
  return (simple_num ? ns : "(" + ns + ")") + "/" + (simple_den ? ds : "(" + ds + ")");
}

}  // namespace adjtower

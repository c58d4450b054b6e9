#include "adjtower/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace adjtower {

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

Poly Poly::x() { return monomial(1); }

Poly Poly::monomial(int k, const Rational& c) {
  if (k < 0) throw std::invalid_argument("negative monomial degree");
  std::vector<Rational> v(k + 1);
  v[k] = c;
  return Poly(std::move(v));
}

Poly Poly::from_z(const zpoly::ZPoly& p, const Rational& c) {
  Poly r;
  if (sgn(c) == 0 || p.empty()) return r;
  r.c_.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (sgn(p[i]) == 0) continue;
    r.c_[i] = c * p[i];
  }
  r.trim();
  return r;
}

void Poly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  if (o.c_.size() == 1) {
    for (auto& c : c_) c *= o.c_[0];
    return *this;
  }
  if (c_.size() == 1) {
    Rational s = c_[0];
    *this = o;
    for (auto& c : c_) c *= s;
    return *this;
  }
  auto [ca, A] = split();
  auto [cb, B] = o.split();
  *this = from_z(zpoly::mul(A, B), ca * cb);
  return *this;
}

Poly Poly::scaled(const Rational& s) const {
  if (sgn(s) == 0) return Poly();
  Poly r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(v));
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return scaled(1 / c_.back());
}

Rational Poly::eval(const Rational& v) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
  return acc;
}

Poly Poly::compose(const Poly& q) const {
  Poly acc;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + Poly(c_[i]);
  return acc;
}

std::pair<Rational, zpoly::ZPoly> Poly::split() const {
  if (c_.empty()) return {Rational(0), {}};
  Integer l = 1;
  for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  zpoly::ZPoly z(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    Integer t;
    mpz_divexact(t.get_mpz_t(), l.get_mpz_t(), c_[i].get_den().get_mpz_t());
    z[i] = c_[i].get_num() * t;
  }
  Integer g = zpoly::content(z);
  z = zpoly::divexact_scalar(z, g);
  Rational c(g, l);
  c.canonicalize();
  return {c, std::move(z)};
}

std::string rational_str(const Rational& q) { return q.get_str(); }

std::string Poly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Rational& c = c_[k];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rational> r = a.coeffs();
  std::vector<Rational> q(a.degree() - b.degree() + 1);
  const auto& bc = b.coeffs();
  Rational li = 1 / b.lc();
  int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    if (sgn(r[k]) == 0) continue;
    Rational t = r[k] * li;
    q[k - db] = t;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= t * bc[j];
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return Poly();
  auto [ca, A] = a.split();
  auto [cb, B] = b.split();
  zpoly::ZPoly g = zpoly::gcd(A, B);
  return Poly::from_z(g, Rational(1) / g.back());
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  Poly g = gcd(a, b);
  return (divmod(a, g).first * b).monic();
}

Poly pow(const Poly& a, unsigned e) {
  Poly r(1);
  Poly base = a;
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

std::vector<std::pair<Poly, int>> squarefree(const Poly& a) {
  // Yun's algorithm.
  std::vector<std::pair<Poly, int>> out;
  if (a.degree() < 1) return out;
  Poly f = a.monic();
  Poly fp = f.derivative();
  Poly g = gcd(f, fp);
  Poly w = divmod(f, g).first;
  Poly y = divmod(fp, g).first;
  Poly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    Poly h = gcd(w, z);
    if (h.degree() > 0) out.push_back({h.monic(), i});
    w = divmod(w, h).first;
    y = divmod(z, h).first;
    z = y - w.derivative();
    ++i;
  }
  return out;
}

Rational resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  // Res(ca A, cb B) = ca^deg(b) cb^deg(a) Res(A, B)
  auto [ca, A] = a.split();
  auto [cb, B] = b.split();
  Rational s = 1;
  for (int i = 0; i < b.degree(); ++i) s *= ca;
  for (int i = 0; i < a.degree(); ++i) s *= cb;
  return s * Rational(zpoly::resultant(A, B));
}

}  // namespace adjtower

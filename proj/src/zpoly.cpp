#include "adjtower/zpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace adjtower::zpoly {

void trim(ZPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

bool is_zero(const ZPoly& a) { return a.empty(); }
bool is_one(const ZPoly& a) { return a.size() == 1 && a[0] == 1; }

ZPoly add(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.size() && i < b.size())
      c[i] = a[i] + b[i];
    else if (i < a.size())
      c[i] = a[i];
    else
      c[i] = b[i];
  }
  trim(c);
  return c;
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.size() && i < b.size())
      c[i] = a[i] - b[i];
    else if (i < a.size())
      c[i] = a[i];
    else
      c[i] = -b[i];
  }
  trim(c);
  return c;
}

ZPoly neg(const ZPoly& a) {
  ZPoly c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

ZPoly scale(const ZPoly& a, const mpz_class& s) {
  if (sgn(s) == 0) return {};
  ZPoly c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * s;
  return c;
}

std::size_t max_bits(const ZPoly& a) {
  std::size_t m = 0;
  for (const auto& c : a)
    if (sgn(c)) m = std::max(m, mpz_sizeinbase(c.get_mpz_t(), 2));
  return m;
}

namespace {

// Kronecker substitution with 64-bit aligned slots of W limbs each.
mpz_class pack(const ZPoly& a, std::size_t W) {
  std::vector<std::uint64_t> pos(a.size() * W, 0), negs(a.size() * W, 0);
  bool any_neg = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int s = sgn(a[i]);
    if (s == 0) continue;
    auto* target = s > 0 ? &pos[i * W] : &negs[i * W];
    if (s < 0) any_neg = true;
    std::size_t cnt = 0;
    mpz_export(target, &cnt, -1, 8, 0, 0, a[i].get_mpz_t());
  }
  mpz_class P, N;
  mpz_import(P.get_mpz_t(), pos.size(), -1, 8, 0, 0, pos.data());
  if (any_neg) {
    mpz_import(N.get_mpz_t(), negs.size(), -1, 8, 0, 0, negs.data());
    P -= N;
  }
  return P;
}

ZPoly unpack(const mpz_class& v, std::size_t W, std::size_t n) {
  int s = sgn(v);
  ZPoly out(n);
  if (s == 0) return {};
  mpz_class av = abs(v);
  std::size_t need = (mpz_sizeinbase(av.get_mpz_t(), 2) + 63) / 64;
  std::vector<std::uint64_t> limbs(std::max(need, n * W) + 1, 0);
  std::size_t cnt = 0;
  mpz_export(limbs.data(), &cnt, -1, 8, 0, 0, av.get_mpz_t());
  mpz_class half, B;
  mpz_ui_pow_ui(B.get_mpz_t(), 2, 64 * W);
  half = B / 2;
  int carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class t;
    mpz_import(t.get_mpz_t(), W, -1, 8, 0, 0, &limbs[i * W]);
    t += carry;
    if (t >= half) {
      t -= B;
      carry = 1;
    } else {
      carry = 0;
    }
    out[i] = s < 0 ? mpz_class(-t) : t;
  }
  trim(out);
  return out;
}

std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

ZPoly mul_kronecker(const ZPoly& a, const ZPoly& b) {
  std::size_t bits = max_bits(a) + max_bits(b) + ceil_log2(std::min(a.size(), b.size())) + 2;
  std::size_t W = bits / 64 + 1;
  mpz_class va = pack(a, W);
  mpz_class vb = (&a == &b) ? va : pack(b, W);
  mpz_class prod = va * vb;
  return unpack(prod, W, a.size() + b.size() - 1);
}

ZPoly mul_school(const ZPoly& a, const ZPoly& b) {
  ZPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  trim(c);
  return c;
}

}  // namespace

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  if (a.size() == 1) return scale(b, a[0]);
  if (b.size() == 1) return scale(a, b[0]);
  if (std::min(a.size(), b.size()) < 10) return mul_school(a, b);
  return mul_kronecker(a, b);
}

ZPoly derivative(const ZPoly& a) {
  if (a.size() <= 1) return {};
  ZPoly c(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) c[i - 1] = a[i] * static_cast<unsigned long>(i);
  trim(c);
  return c;
}

ZPoly divexact_scalar(const ZPoly& a, const mpz_class& c) {
  if (c == 1) return a;
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mpz_divexact(r[i].get_mpz_t(), a[i].get_mpz_t(), c.get_mpz_t());
  return r;
}

bool divides(const ZPoly& b, const ZPoly& a0, ZPoly* qout) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  if (a0.empty()) {
    if (qout) qout->clear();
    return true;
  }
  if (a0.size() < b.size()) return false;
  if (b.size() == 1) {
    for (const auto& c : a0)
      if (!mpz_divisible_p(c.get_mpz_t(), b[0].get_mpz_t())) return false;
    if (qout) *qout = divexact_scalar(a0, b[0]);
    return true;
  }
  ZPoly a = a0;
  std::size_t db = b.size() - 1;
  ZPoly q(a.size() - db);
  const mpz_class& lb = b.back();
  for (std::size_t k = a.size(); k-- > db;) {
    mpz_class& top = a[k];
    if (sgn(top) == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return false;
    mpz_class t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    std::size_t shift = k - db;
    for (std::size_t j = 0; j <= db; ++j) mpz_submul(a[shift + j].get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t());
    q[shift] = t;
  }
  for (std::size_t i = 0; i < db; ++i)
    if (sgn(a[i]) != 0) return false;
  trim(q);
  if (qout) *qout = std::move(q);
  return true;
}

ZPoly divexact(const ZPoly& a, const ZPoly& b) {
  ZPoly q;
  if (!divides(b, a, &q)) throw std::logic_error("inexact polynomial division");
  return q;
}

mpz_class content(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (!a.empty() && sgn(a.back()) < 0) g = -g;
  return g;
}

ZPoly primitive(const ZPoly& a) {
  if (a.empty()) return {};
  return divexact_scalar(a, content(a));
}

modp::PolyP reduce(const modp::Field& F, const ZPoly& a) {
  modp::PolyP r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.reduce(a[i]);
  modp::trim(r);
  return r;
}

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
  if (a.empty() && b.empty()) return {};
  if (a.empty()) return scale(primitive(b), abs(content(b)));
  if (b.empty()) return scale(primitive(a), abs(content(a)));
  mpz_class ca = abs(content(a)), cb = abs(content(b));
  mpz_class cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  ZPoly A = primitive(a), B = primitive(b);
  if (A.size() == 1 || B.size() == 1) return {cg};
  if (A == B) return scale(A, cg);
  if (A.size() < B.size()) std::swap(A, B);
  if (divides(B, A)) return scale(B, cg);

  mpz_class gamma;
  mpz_gcd(gamma.get_mpz_t(), A.back().get_mpz_t(), B.back().get_mpz_t());

  ZPoly H;
  mpz_class M = 0;
  int dmin = degree(B) + 1;
  for (std::size_t k = 0;; ++k) {
    modp::Field F(modp::nth_prime(k));
    modp::u64 g = F.reduce(gamma);
    if (g == 0) continue;
    modp::PolyP Ap = reduce(F, A), Bp = reduce(F, B);
    if (static_cast<int>(Ap.size()) != degree(A) + 1 || static_cast<int>(Bp.size()) != degree(B) + 1) continue;
    modp::PolyP G = modp::gcd(F, Ap, Bp);
    int d = static_cast<int>(G.size()) - 1;
    if (d == 0) return {cg};
    if (d > dmin) continue;
    for (auto& c : G) c = F.mul(c, g);
    mpz_class p = static_cast<unsigned long>(F.prime());
    if (d < dmin) {
      dmin = d;
      H.assign(G.size(), 0);
      for (std::size_t i = 0; i < G.size(); ++i) H[i] = F.lift_symmetric(G[i]);
      M = p;
      continue;
    }
    // CRT combine and watch for stabilization.
    bool changed = false;
    mpz_class Mp = M * p;
    mpz_class half = Mp / 2;
    modp::u64 Minv = F.inv(F.reduce(M));
    for (std::size_t i = 0; i < G.size(); ++i) {
      modp::u64 h = F.reduce(H[i]);
      modp::u64 t = F.from(F.mul(F.sub(G[i], h), Minv));
      if (t == 0) continue;
      changed = true;
      mpz_class nh = H[i] + M * static_cast<unsigned long>(t);
      if (nh > half) nh -= Mp;
      H[i] = nh;
    }
    M = Mp;
    if (!changed) {
      ZPoly cand = primitive(H);
      if (divides(cand, A) && divides(cand, B)) return scale(cand, cg);
    }
  }
}

namespace {

modp::u64 resultant_modp(const modp::Field& F, modp::PolyP a, modp::PolyP b) {
  modp::u64 res = F.one();
  while (true) {
    std::size_t da = a.size() - 1, db = b.size() - 1;
    if (db == 0) return F.mul(res, F.pow(b[0], da));
    modp::PolyP r = modp::rem(F, a, b);
    if (r.empty()) return 0;
    std::size_t dr = r.size() - 1;
    if ((da * db) % 2) res = F.neg(res);
    res = F.mul(res, F.pow(b.back(), da - dr));
    a = std::move(b);
    b = std::move(r);
  }
}

}  // namespace

mpz_class resultant(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return 0;
  std::size_t m = a.size() - 1, n = b.size() - 1;
  // |Res| <= |a|_2^n |b|_2^m
  std::size_t bits = n * (max_bits(a) + ceil_log2(a.size())) + m * (max_bits(b) + ceil_log2(b.size())) + 2;
  mpz_class H = 0, M = 1;
  for (std::size_t k = 0; mpz_sizeinbase(M.get_mpz_t(), 2) <= bits; ++k) {
    modp::Field F(modp::nth_prime(k));
    modp::PolyP ap = reduce(F, a), bp = reduce(F, b);
    if (ap.size() != a.size() || bp.size() != b.size()) continue;
    modp::u64 r = resultant_modp(F, ap, bp);
    mpz_class p = static_cast<unsigned long>(F.prime());
    modp::u64 t = F.from(F.mul(F.sub(r, F.reduce(H)), F.inv(F.reduce(M))));
    H += M * static_cast<unsigned long>(t);
    M *= p;
  }
  if (H > M / 2) H -= M;
  return H;
}

}  // namespace adjtower::zpoly

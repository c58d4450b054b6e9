#include "adjtower/modular.hpp"

#include <mutex>
#include <stdexcept>

namespace adjtower::modp {

namespace {

u64 mulmod_plain(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod_plain(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_plain(r, a, m);
    a = mulmod_plain(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

Field::Field(u64 p) : p_(p) {
  if (p < 3 || !(p & 1) || p >= (u64{1} << 62)) throw std::invalid_argument("modulus must be an odd prime below 2^62");
  // Newton iteration for p^{-1} mod 2^64.
  u64 inv = p;
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  pinv_ = ~inv + 1;
  r1_ = static_cast<u64>((static_cast<u128>(1) << 64) % p);
  r2_ = mulmod_plain(r1_, r1_, p);
}

u64 Field::pow(u64 a, u64 e) const {
  u64 r = r1_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 Field::inv(u64 a) const {
  if (a == 0) throw std::domain_error("inverse of zero modulo p");
  return pow(a, p_ - 2);
}

u64 Field::reduce(const mpz_class& z) const {
  unsigned long r = mpz_fdiv_ui(z.get_mpz_t(), p_);
  return to(r);
}

u64 Field::reduce(const mpq_class& q, bool* bad) const {
  u64 d = reduce(q.get_den());
  if (d == 0) {
    if (bad) *bad = true;
    return 0;
  }
  return mul(reduce(q.get_num()), inv(d));
}

u64 Field::from_signed(long v) const {
  if (v >= 0) return to(static_cast<u64>(v));
  return neg(to(static_cast<u64>(-(v + 1)) + 1));
}

mpz_class Field::lift_symmetric(u64 a) const {
  u64 s = from(a);
  mpz_class r;
  if (s > p_ / 2) {
    r = mpz_class(static_cast<unsigned long>(p_ - s));
    r = -r;
  } else {
    r = mpz_class(static_cast<unsigned long>(s));
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while (!(d & 1)) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_plain(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_plain(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

u64 nth_prime(std::size_t k) {
  static std::vector<u64> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  u64 c = cache.empty() ? (u64{1} << 62) - 1 : cache.back() - 2;
  while (cache.size() <= k) {
    while (!is_prime(c)) c -= 2;
    cache.push_back(c);
    c -= 2;
  }
  return cache[k];
}

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP mul(const Field& F, const PolyP& a, const PolyP& b) {
  if (a.empty() || b.empty()) return {};
  PolyP c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  }
  trim(c);
  return c;
}

PolyP rem(const Field& F, const PolyP& a0, const PolyP& b) {
  PolyP a = a0;
  trim(a);
  if (b.empty()) throw std::domain_error("polynomial division by zero modulo p");
  u64 li = F.inv(b.back());
  std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    u64 q = F.mul(a.back(), li);
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = F.sub(a[shift + j], F.mul(q, b[j]));
    a.pop_back();
    trim(a);
  }
  return a;
}

PolyP gcd(const Field& F, PolyP a, PolyP b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyP r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    u64 li = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, li);
  }
  return a;
}

u64 eval(const Field& F, const PolyP& a, u64 x) {
  u64 acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

}  // namespace adjtower::modp

#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace adjtower::modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Z/pZ for an odd prime p < 2^62. Elements are stored in Montgomery form;
// add/sub/neg are representation agnostic, mul/inv expect Montgomery inputs.
class Field {
 public:
  explicit Field(u64 p);

  u64 prime() const { return p_; }
  u64 one() const { return r1_; }

  u64 to(u64 a) const { return mul(a % p_, r2_); }
  u64 from(u64 a) const { return redc(a); }

  u64 mul(u64 a, u64 b) const { return redc(static_cast<u128>(a) * b); }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a ? p_ - a : 0; }

  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;  // a != 0

  // Residue of an integer, returned in Montgomery form.
  u64 reduce(const mpz_class& z) const;
  u64 reduce(const mpq_class& q, bool* bad = nullptr) const;
  u64 from_signed(long v) const;

  // Standard representative in (-p/2, p/2] of a Montgomery element.
  mpz_class lift_symmetric(u64 a) const;

 private:
  u64 redc(u128 t) const {
    u64 m = static_cast<u64>(t) * pinv_;
    u128 u = (t + static_cast<u128>(m) * p_) >> 64;
    u64 r = static_cast<u64>(u);
    return r >= p_ ? r - p_ : r;
  }

  u64 p_;
  u64 pinv_;  // -p^{-1} mod 2^64
  u64 r1_;    // 2^64 mod p
  u64 r2_;    // 2^128 mod p
};

bool is_prime(u64 n);

// The k-th prime (0-based) of a fixed descending list of primes below 2^62.
u64 nth_prime(std::size_t k);

// Polynomials over Z/pZ, dense, lowest degree first, Montgomery form.
using PolyP = std::vector<u64>;

void trim(PolyP& a);
PolyP mul(const Field& F, const PolyP& a, const PolyP& b);
// Remainder of a by b (b nonzero).
PolyP rem(const Field& F, const PolyP& a, const PolyP& b);
// Monic gcd.
PolyP gcd(const Field& F, PolyP a, PolyP b);
u64 eval(const Field& F, const PolyP& a, u64 x);

}  // namespace adjtower::modp

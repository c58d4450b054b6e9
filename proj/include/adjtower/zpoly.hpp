#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "adjtower/modular.hpp"

// Dense integer polynomials, lowest degree first, no trailing zeros.
// This is the workhorse representation behind Q[x] and Q(x).
namespace adjtower::zpoly {

using ZPoly = std::vector<mpz_class>;

inline int degree(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }
void trim(ZPoly& a);
bool is_zero(const ZPoly& a);
bool is_one(const ZPoly& a);

ZPoly add(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly neg(const ZPoly& a);
ZPoly scale(const ZPoly& a, const mpz_class& c);
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly derivative(const ZPoly& a);

// Exact division; throws if b does not divide a.
ZPoly divexact(const ZPoly& a, const ZPoly& b);
// Returns true and sets q when b | a over Z.
bool divides(const ZPoly& b, const ZPoly& a, ZPoly* q = nullptr);
// Divide every coefficient by c (exact).
ZPoly divexact_scalar(const ZPoly& a, const mpz_class& c);

// Content with the sign of the leading coefficient (so a / content has lc > 0).
mpz_class content(const ZPoly& a);
ZPoly primitive(const ZPoly& a);

// gcd over Z[x] with positive leading coefficient; the integer content is
// gcd(content(a), content(b)).
ZPoly gcd(const ZPoly& a, const ZPoly& b);

// Resultant over Z, by Hadamard-bounded CRT. Res(a, 0) = 0.
mpz_class resultant(const ZPoly& a, const ZPoly& b);

std::size_t max_bits(const ZPoly& a);
modp::PolyP reduce(const modp::Field& F, const ZPoly& a);

}  // namespace adjtower::zpoly

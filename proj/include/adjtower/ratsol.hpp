#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adjtower/diffop.hpp"

namespace adjtower {

// Local exponents of L at a point. For a finite point alpha the exponents s
// are those of (x - alpha)^s; at infinity they are those of (1/x)^s.
struct IndicialData {
  std::optional<Rational> point;  // nullopt = infinity
  Poly indicial;                  // in the variable s
  std::vector<Integer> integer_roots;  // sorted
};

IndicialData indicial_at(const DiffOperator& L, const std::optional<Rational>& point);

// Norm over all roots of the squarefree polynomial P (all of which must have
// the same valuation pattern in the coefficients of L): the product of the
// indicial polynomials at the roots of P.
Poly indicial_norm(const DiffOperator& L, const Poly& P);

struct RatSolBounds {
  std::optional<int> num_degree;
  std::optional<Poly> denominator;
};

struct RatSolResult {
  std::vector<RatFunc> basis;
  bool complete = true;  // false when caller bounds replaced the automatic ones
  Poly denominator;      // denominator used by the ansatz
  int num_degree = -1;   // numerator degree bound used (-1: nothing to search)
};

// Basis of the rational solutions of L(y) = 0. Each returned solution has a
// primitive integer numerator with positive leading coefficient over a
// monic denominator.
RatSolResult rational_solutions(const DiffOperator& L, const RatSolBounds& bounds = {});

// Sorted integer roots of a nonzero polynomial (Sturm bisection).
std::vector<Integer> integer_roots(const Poly& p);

// Falling factorial s(s-1)...(s-i+1) as a polynomial in s.
Poly falling_factorial(int i);

}  // namespace adjtower

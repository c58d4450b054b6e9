#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "adjtower/diffop.hpp"

namespace adjtower {

DiffOperator make_order1(const RatFunc& a1);                      // a1 Dx + a1'/2
DiffOperator make_order2(const RatFunc& a2, const RatFunc& a0);   // a2 Dx^2 + a2' Dx + a0
DiffOperator make_order3(const RatFunc& a3, const RatFunc& a1);   // a3 Dx^3 + 3/2 a3' Dx^2 + a1 Dx + a1'/2 - a3'''/4

// (P + adjoint(P)) / 2.
DiffOperator symmetrize(const DiffOperator& P);

// Self-adjoint operator of order q whose coefficients of Dx^q, Dx^{q-2}, ...
// are the given functions (missing trailing ones are zero).
DiffOperator make_self_adjoint(int q, const std::vector<RatFunc>& free_coeffs);

// Deterministic random self-adjoint operator with integer polynomial data in
// [-9, 9]; the leading coefficient has degree exactly coeff_degree.
DiffOperator random_self_adjoint(int order, int coeff_degree, std::uint64_t seed);

// Random integer polynomial helpers shared by the generators.
Poly random_poly(std::mt19937_64& rng, int degree, bool exact_degree = true);
long random_small(std::mt19937_64& rng);  // uniform in [-9, 9]

// Some f with L*f self-adjoint, if one exists.
std::optional<RatFunc> right_normalize_self_adjoint(const DiffOperator& L);

}  // namespace adjtower

#pragma once

#include <optional>
#include <vector>

#include "adjtower/diffop.hpp"
#include "adjtower/powers.hpp"

namespace adjtower {

struct AnsatzBounds {
  int order = 1;
  int numerator_degree = 0;
  // Denominator of X; when unset, lc(L)^k is tried for k = 1, 2, 3.
  std::optional<Poly> denominator;
};

struct IntertwinerResult {
  std::vector<DiffOperator> basis;  // each satisfies check_intertwiner
  Poly denominator;                 // denominator that produced the basis
};

// X = (1/den) * sum_{i <= order} p_i(x) Dx^i with deg p_i <= numerator_degree
// and adjoint(X) L == adjoint(L) X.
IntertwinerResult intertwiner_search(const DiffOperator& L, const AnsatzBounds& bounds);

// First intertwiner found with denominator lc(L)^max_power, for numerator
// degrees doubling from max_power * deg lc(L) + ord L + 4 up to max_degree
// (0: 2 max_power deg lc(L) + 64), trying orders ord L - 1 down to 1 at
// each degree. The result has exactly the order it was found at, so the
// constant intertwiners of a self-adjoint L are never returned.
std::optional<DiffOperator> find_intertwiner(const DiffOperator& L, int max_power = 2, int max_degree = 0);
// The whole ansatz space in which find_intertwiner stopped (empty basis if
// none); its highest order is the order of the returned intertwiner.
IntertwinerResult find_intertwiner_space(const DiffOperator& L, int max_power = 2, int max_degree = 0);

bool check_intertwiner(const DiffOperator& L, const DiffOperator& X);

// For Y' = A Y with A antisymmetric (form G = I) or infinitesimally
// symplectic (G = J), and L = cyclic_operator(S, c): solutions of adjoint(L)
// are Y^T G u with u = P^-1 e_last, P the matrix of the iterated forms
// c_k = c_{k-1}' + c_{k-1} A. So X = sum_i (u^T G P^-1)_i Dx^i intertwines.
// Throws MathError when A has neither shape or c is not cyclic.
DiffOperator kolchin_intertwiner(const CompanionSystem& S, const QxVector& c);

struct Transformed {
  DiffOperator ltilde;    // monic
  DiffOperator cofactor;  // ltilde * T == cofactor * L
};

// Minimal operator annihilating T(y) for all solutions y of L.
Transformed transform_solutions(const DiffOperator& L, const DiffOperator& T);

// Operator equivalent to the m-th symmetric power of L2: the minimal
// annihilator of Dx^n applied to the solutions of sym_power(L2, m).
DiffOperator sym_power_equivalent(const DiffOperator& L2, int m, int n = 1);

}  // namespace adjtower

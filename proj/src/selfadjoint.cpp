#include "adjtower/selfadjoint.hpp"

#include "adjtower/ratsol.hpp"

namespace adjtower {

DiffOperator make_order1(const RatFunc& a1) {
  if (a1.is_zero()) throw MathError("make_order1: a1 must be nonzero");
  return DiffOperator({a1.derivative().scaled(Rational(1, 2)), a1});
}

DiffOperator make_order2(const RatFunc& a2, const RatFunc& a0) {
  if (a2.is_zero()) throw MathError("make_order2: a2 must be nonzero");
  return DiffOperator({a0, a2.derivative(), a2});
}

DiffOperator make_order3(const RatFunc& a3, const RatFunc& a1) {
  if (a3.is_zero()) throw MathError("make_order3: a3 must be nonzero");
  RatFunc d1 = a3.derivative();
  RatFunc d3 = d1.derivative().derivative();
  RatFunc c0 = a1.derivative().scaled(Rational(1, 2)) - d3.scaled(Rational(1, 4));
  return DiffOperator({c0, a1, d1.scaled(Rational(3, 2)), a3});
}

DiffOperator symmetrize(const DiffOperator& P) { return (P + adjoint(P)).scaled(Rational(1, 2)); }

DiffOperator make_self_adjoint(int q, const std::vector<RatFunc>& free_coeffs) {
  if (q < 0) throw MathError("make_self_adjoint: negative order");
  if (free_coeffs.empty() || free_coeffs[0].is_zero()) throw MathError("make_self_adjoint: leading coefficient must be nonzero");
  DiffOperator S;
  for (int k = q, idx = 0; k >= 0; k -= 2, ++idx) {
    RatFunc want = idx < static_cast<int>(free_coeffs.size()) ? free_coeffs[idx] : RatFunc();
    RatFunc deficit = want - S.coeff(k);
    if (deficit.is_zero()) continue;
    std::vector<RatFunc> c(k + 1);
    c[k] = deficit;
    S += symmetrize(DiffOperator(std::move(c)));
  }
  return S;
}

long random_small(std::mt19937_64& rng) { return static_cast<long>(rng() % 19) - 9; }

Poly random_poly(std::mt19937_64& rng, int degree, bool exact_degree) {
  std::vector<Rational> c(degree + 1);
  for (auto& v : c) v = random_small(rng);
  if (exact_degree)
    while (sgn(c.back()) == 0) c.back() = random_small(rng);
  return Poly(std::move(c));
}

DiffOperator random_self_adjoint(int order, int coeff_degree, std::uint64_t seed) {
  if (order < 1) throw MathError("random_self_adjoint: order must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<RatFunc> c(order + 1);
  for (int i = 0; i < order; ++i) c[i] = RatFunc(random_poly(rng, coeff_degree, false));
  c[order] = RatFunc(random_poly(rng, coeff_degree, true));
  return symmetrize(DiffOperator(std::move(c)));
}

std::optional<RatFunc> right_normalize_self_adjoint(const DiffOperator& L) {
  if (L.order() < 1) throw MathError("right_normalize_self_adjoint: order must be at least 1");
  int n = L.order();
  const RatFunc& an = L.lc();
  // The Dx^{n-1} coefficient of L*f must be n/2 times the derivative of the
  // leading one, which gives f'/f = an'/an - (2/n) a_{n-1}/an.
  RatFunc g = an.derivative() / an - (L.coeff(n - 1) / an).scaled(Rational(2, n));
  DiffOperator first({-g, RatFunc(1)});
  auto sols = rational_solutions(first);
  if (sols.basis.empty()) return std::nullopt;
  RatFunc f = sols.basis[0];
  if (!is_self_adjoint(L * DiffOperator(f))) return std::nullopt;
  return f;
}

}  // namespace adjtower

#include "adjtower/ratsol.hpp"

#include <algorithm>

#include "adjtower/linalg.hpp"

namespace adjtower {

namespace {

Poly primitive_signed(const Poly& p) {
  if (p.is_zero()) return p;
  auto [c, z] = p.split();
  return Poly::from_z(z, sgn(c));
}

int sign_changes(const std::vector<Poly>& chain, const Rational& v) {
  int changes = 0, last = 0;
  for (const auto& q : chain) {
    int s = sgn(q.eval(v));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Number of times P divides a (P nonconstant, a nonzero).
int multiplicity(Poly a, const Poly& P) {
  int v = 0;
  while (true) {
    auto [q, r] = divmod(a, P);
    if (!r.is_zero()) return v;
    a = std::move(q);
    ++v;
  }
}

Poly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
      if (i == k) break;
    }
  Poly r;
  for (std::size_t i = n; i-- > 0;) r = r * Poly({-xs[i], 1}) + Poly(dd[i]);
  return r;
}

// Indicial polynomial (norm over the roots of P) for given valuations.
Poly indicial_piece(const std::vector<Poly>& a, const Poly& P, const std::vector<int>& v) {
  int n = static_cast<int>(a.size()) - 1;
  int mu = 0;
  bool first = true;
  for (int i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    if (first || v[i] - i < mu) mu = v[i] - i;
    first = false;
  }
  Poly dP = P.derivative();
  std::vector<std::pair<int, Poly>> g;
  for (int i = 0; i <= n; ++i) {
    if (a[i].is_zero() || v[i] - i != mu) continue;
    Poly h = a[i];
    for (int k = 0; k < v[i]; ++k) h = divmod(h, P).first;
    Poly t = divmod(h * pow(dP, v[i]), P).second;
    g.emplace_back(i, t);
  }
  int d = P.degree();
  if (d == 1) {
    Rational alpha = -P.coeff(0) / P.coeff(1);
    Poly r;
    for (auto& [i, t] : g) r += falling_factorial(i).scaled(t.eval(alpha));
    return r;
  }
  int N = n * d;
  std::vector<Rational> xs, ys;
  for (int j = 0; j <= N; ++j) {
    Poly I;
    for (auto& [i, t] : g) {
      Rational f = falling_factorial(i).eval(j);
      if (sgn(f) != 0) I += t.scaled(f);
    }
    xs.emplace_back(j);
    ys.push_back(I.is_zero() ? Rational(0) : resultant(P, I));
  }
  return interpolate(xs, ys);
}

Poly indicial_infinity(const std::vector<Poly>& a) {
  int n = static_cast<int>(a.size()) - 1;
  int mu = 0;
  bool first = true;
  for (int i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    if (first || a[i].degree() - i > mu) mu = a[i].degree() - i;
    first = false;
  }
  Poly r;
  for (int i = 0; i <= n; ++i)
    if (!a[i].is_zero() && a[i].degree() - i == mu) r += falling_factorial(i).scaled(a[i].lc());
  // y ~ x^rho = (1/x)^s with s = -rho
  return r.compose(Poly({0, -1}));
}

// Split the squarefree P by the valuation of a at its roots.
std::vector<std::pair<Poly, int>> split_by_valuation(const Poly& P, const Poly& a) {
  std::vector<std::pair<Poly, int>> out;
  Poly h = gcd(P, a);
  Poly rest = divmod(P, h).first;
  if (rest.degree() > 0) out.emplace_back(rest.monic(), 0);
  Poly t = a;
  int v = 1;
  while (h.degree() > 0) {
    t = divmod(t, h).first;
    Poly h2 = gcd(h, t);
    Poly piece = divmod(h, h2).first;
    if (piece.degree() > 0) out.emplace_back(piece.monic(), v);
    h = h2;
    ++v;
  }
  return out;
}

}  // namespace

Poly falling_factorial(int i) {
  Poly r(1);
  for (int k = 0; k < i; ++k) r *= Poly({Rational(-k), 1});
  return r;
}

std::vector<Integer> integer_roots(const Poly& p0) {
  if (p0.is_zero()) throw MathError("integer_roots: zero polynomial");
  std::vector<Integer> out;
  if (p0.degree() < 1) return out;
  Poly p = primitive_signed(divmod(p0, gcd(p0, p0.derivative())).first);
  std::vector<Poly> chain{p, primitive_signed(p.derivative())};
  while (chain.back().degree() > 0) {
    Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(primitive_signed(-r));
  }
  // Cauchy bound
  Rational B = 0;
  for (int i = 0; i < p.degree(); ++i) B = std::max(B, Rational(abs(p.coeff(i) / p.lc())));
  Integer hi = Integer(B.get_num() / B.get_den()) + 2;
  Integer lo = -hi;
  // roots in (a, b] = V(a) - V(b)
  std::vector<std::pair<Integer, Integer>> stack{{lo, hi}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    int cnt = sign_changes(chain, Rational(a)) - sign_changes(chain, Rational(b));
    if (cnt <= 0) continue;
    if (b - a == 1) {
      if (sgn(p.eval(Rational(b))) == 0) out.push_back(b);
      continue;
    }
    Integer m = a + (b - a) / 2;
    stack.emplace_back(a, m);
    stack.emplace_back(m, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Poly indicial_norm(const DiffOperator& L, const Poly& P) {
  if (L.is_zero()) throw MathError("indicial_norm: zero operator");
  auto a = L.cleared();
  std::vector<int> v(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) v[i] = multiplicity(a[i], P);
  return indicial_piece(a, P, v);
}

IndicialData indicial_at(const DiffOperator& L, const std::optional<Rational>& point) {
  if (L.is_zero()) throw MathError("indicial_at: zero operator");
  auto a = L.cleared();
  IndicialData d;
  d.point = point;
  if (!point) {
    d.indicial = indicial_infinity(a);
  } else if (sgn(a.back().eval(*point)) != 0) {
    d.indicial = falling_factorial(L.order());
  } else {
    d.indicial = indicial_norm(L, Poly({-*point, 1}));
  }
  d.integer_roots = integer_roots(d.indicial);
  return d;
}

RatSolResult rational_solutions(const DiffOperator& L, const RatSolBounds& bounds) {
  if (L.is_zero()) throw MathError("rational_solutions: zero operator");
  RatSolResult res;
  int n = L.order();
  auto a = L.cleared();
  if (n == 0) {
    res.denominator = Poly(1);
    return res;
  }

  Poly Q(1);
  if (bounds.denominator) {
    Q = bounds.denominator->monic();
    res.complete = false;
  } else {
    std::vector<std::pair<Poly, std::vector<int>>> pieces;
    for (auto& [f, m] : squarefree(a.back()))
      if (f.degree() > 0) pieces.push_back({f, {}});
    for (int i = 0; i <= n; ++i) {
      std::vector<std::pair<Poly, std::vector<int>>> next;
      for (auto& [P, vs] : pieces) {
        if (a[i].is_zero()) {
          auto w = vs;
          w.push_back(0);
          next.push_back({P, w});
          continue;
        }
        for (auto& [piece, v] : split_by_valuation(P, a[i])) {
          auto w = vs;
          w.push_back(v);
          next.push_back({piece, w});
        }
      }
      pieces = std::move(next);
    }
    for (auto& [P, vs] : pieces) {
      auto roots = integer_roots(indicial_piece(a, P, vs));
      if (!roots.empty() && roots.front() < 0) Q *= pow(P, static_cast<unsigned>(-roots.front().get_si()));
    }
  }

  int dN;
  if (bounds.num_degree) {
    dN = *bounds.num_degree;
    res.complete = false;
  } else {
    auto roots = integer_roots(indicial_infinity(a));
    // exponents at infinity are -(deg N - deg Q)
    if (roots.empty()) {
      res.denominator = Q;
      return res;
    }
    Integer rho = -roots.front();
    dN = static_cast<int>(rho.get_si()) + Q.degree();
  }
  res.denominator = Q;
  res.num_degree = dN;
  if (dN < 0) return res;

  // L o (1/Q) applied to x^k is sum_m b_m fall(k, m) x^(k-m).
  DiffOperator Lt = L * DiffOperator(RatFunc(Poly(1), Q));
  std::vector<Poly> b = Lt.cleared();
  int maxdeg = 0;
  for (auto& p : b) maxdeg = std::max(maxdeg, p.degree());
  std::size_t rows = static_cast<std::size_t>(maxdeg + dN + 1);
  QMatrix M(rows, dN + 1);
  for (int k = 0; k <= dN; ++k)
    for (int m = 0; m <= std::min(k, n); ++m) {
      if (b[m].is_zero()) continue;
      Rational f = falling_factorial(m).eval(k);
      for (int j = 0; j <= b[m].degree(); ++j) M(j + k - m, k) += f * b[m].coeff(j);
    }
  for (auto& v : nullspace(M)) {
    Poly N(v);
    RatFunc y(N, Q);
    auto [c, z] = y.num().split();
    res.basis.push_back(y.scaled(1 / c));
  }
  return res;
}

}  // namespace adjtower

#include "adjtower/homomorphisms.hpp"

#include <algorithm>

#include "adjtower/linalg.hpp"
#include "adjtower/powers.hpp"

namespace adjtower {

namespace {

DiffOperator monic(const DiffOperator& L) { return L.left_mul(L.lc().inverse()); }

std::vector<DiffOperator> search_with(const DiffOperator& L, int k, int d, const Poly& den) {
  RatFunc deninv(Poly(1), den);
  DiffOperator L1 = DiffOperator(deninv) * L;
  DiffOperator L2 = adjoint(L) * DiffOperator(deninv);
  int sgn_k = k % 2 == 0 ? 1 : -1;

  // D^m L1 for m <= k
  std::vector<DiffOperator> DL1{L1};
  for (int m = 1; m <= k; ++m) DL1.push_back(DiffOperator::D() * DL1.back());

  // Column for the unknown x^j Dx^i:
  //   s (-1)^i Dx^i x^j L1 - L2 x^j Dx^i
  // with Dx^i x^j = sum_t C(i,t) j!/(j-t)! x^(j-t) Dx^(i-t).
  std::vector<DiffOperator> cols;
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= d; ++j) {
      DiffOperator left;
      Rational ff = 1;
      for (int t = 0; t <= std::min(i, j); ++t) {
        if (t > 0) ff *= j - t + 1;
        Rational c = Rational(binomial(i, t)) * ff;
        left += DL1[i - t].left_mul(RatFunc(Poly::monomial(j - t, c)));
      }
      if ((i % 2 == 0 ? 1 : -1) * sgn_k < 0) left = -left;
      std::vector<RatFunc> xjDi(i + 1);
      xjDi[i] = RatFunc(Poly::monomial(j));
      cols.push_back(left - L2 * DiffOperator(xjDi));
    }

  // common denominator, then equate coefficients of x^e Dx^m
  Poly common(1);
  int maxord = 0;
  for (const auto& C : cols) {
    maxord = std::max(maxord, C.order());
    for (const auto& f : C.coeffs())
      if (!f.is_zero()) common = lcm(common, f.den());
  }
  std::vector<std::vector<Poly>> nums(cols.size());
  int maxdeg = 0;
  for (std::size_t u = 0; u < cols.size(); ++u) {
    nums[u].resize(maxord + 1);
    for (int m = 0; m <= cols[u].order(); ++m) {
      const RatFunc& f = cols[u].coeffs()[m];
      if (f.is_zero()) continue;
      nums[u][m] = divmod(f.num() * common, f.den()).first;
      maxdeg = std::max(maxdeg, nums[u][m].degree());
    }
  }
  std::size_t rows = static_cast<std::size_t>(maxord + 1) * (maxdeg + 1);
  QMatrix M(rows, cols.size());
  for (std::size_t u = 0; u < cols.size(); ++u)
    for (int m = 0; m <= maxord; ++m)
      for (int e = 0; e <= nums[u][m].degree(); ++e) M(m * (maxdeg + 1) + e, u) = nums[u][m].coeff(e);

  std::vector<DiffOperator> out;
  for (const auto& v : nullspace(M)) {
    std::vector<RatFunc> c(k + 1);
    for (int i = 0; i <= k; ++i) {
      std::vector<Rational> p(v.begin() + i * (d + 1), v.begin() + (i + 1) * (d + 1));
      c[i] = RatFunc(Poly(p), den);
    }
    DiffOperator X(c);
    if (!X.is_zero() && check_intertwiner(L, X)) out.push_back(X);
  }
  return out;
}

}  // namespace

bool check_intertwiner(const DiffOperator& L, const DiffOperator& X) { return adjoint(X) * L == adjoint(L) * X; }

IntertwinerResult intertwiner_search(const DiffOperator& L, const AnsatzBounds& b) {
  if (L.is_zero()) throw MathError("intertwiner_search: zero operator");
  if (b.order < 0 || b.numerator_degree < 0) throw MathError("intertwiner_search: bounds must be nonnegative");
  if (b.order >= L.order()) throw MathError("intertwiner_search: intertwiner order must be below the operator order");
  IntertwinerResult res;
  if (b.denominator) {
    res.denominator = b.denominator->monic();
    res.basis = search_with(L, b.order, b.numerator_degree, res.denominator);
    return res;
  }
  Poly lc = L.cleared().back().monic();
  Poly den(1);
  for (int e = 1; e <= 3; ++e) {
    den = den * lc;
    res.denominator = den;
    res.basis = search_with(L, b.order, b.numerator_degree, den);
    if (!res.basis.empty()) return res;
    if (lc.degree() == 0) break;
  }
  return res;
}

IntertwinerResult find_intertwiner_space(const DiffOperator& L, int max_power, int max_degree) {
  int n = L.order();
  Poly lc = L.cleared().back().monic();
  int e = lc.degree() == 0 ? 0 : max_power;
  // lc^e with a wide enough numerator also covers every lower power
  AnsatzBounds b;
  b.denominator = pow(lc, e);
  int cap = max_degree > 0 ? max_degree : 2 * e * lc.degree() + 64;
  for (int d = std::min(e * lc.degree() + n + 4, cap);; d = std::min(2 * d, cap)) {
    b.numerator_degree = d;
    for (int k = n - 1; k >= 1; --k) {
      b.order = k;
      // lower-order members (constants, for self-adjoint L) are met again
      // at smaller k
      auto r = intertwiner_search(L, b);
      for (const auto& X : r.basis)
        if (X.order() == k) return r;
    }
    if (d >= cap) break;
  }
  return {};
}

std::optional<DiffOperator> find_intertwiner(const DiffOperator& L, int max_power, int max_degree) {
  auto r = find_intertwiner_space(L, max_power, max_degree);
  int k = 0;
  for (const auto& X : r.basis) k = std::max(k, X.order());
  for (const auto& X : r.basis)
    if (X.order() == k) return X;
  return std::nullopt;
}

Transformed transform_solutions(const DiffOperator& L, const DiffOperator& T) {
  if (L.order() < 1) throw MathError("transform_solutions: operator must have positive order");
  if (T.is_zero()) throw MathError("transform_solutions: zero transform");
  int n = L.order();
  std::vector<DiffOperator> R{right_divide(T, L).r};
  if (R[0].is_zero()) throw MathError("transform_solutions: transform is zero modulo the operator");
  for (int k = 0; k <= n; ++k) {
    if (k > 0) R.push_back(right_divide(DiffOperator::D() * R.back(), L).r);
    QxMatrix M(n, R.size());
    for (std::size_t j = 0; j < R.size(); ++j)
      for (int i = 0; i < n; ++i) M(i, j) = R[j].coeff(i);
    for (const auto& v : nullspace(M)) {
      if (v.back().is_zero()) continue;
      Transformed t;
      t.ltilde = monic(DiffOperator(v));
      Division d = right_divide(t.ltilde * T, L);
      if (!d.r.is_zero()) throw MathError("transform_solutions: defining identity failed");
      t.cofactor = d.q;
      return t;
    }
  }
  throw MathError("transform_solutions: no dependence found");
}

namespace {

// x with P x = b, P invertible
QxVector solve(const QxMatrix& P, const QxVector& b) {
  std::size_t n = P.rows;
  QxMatrix M(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) M(i, j) = P(i, j);
    M(i, n) = -b[i];
  }
  for (const auto& v : nullspace(M)) {
    if (v[n].is_zero()) continue;
    QxVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = v[i] / v[n];
    return x;
  }
  throw MathError("kolchin_intertwiner: singular system");
}

}  // namespace

DiffOperator kolchin_intertwiner(const CompanionSystem& S, const QxVector& c) {
  std::size_t n = S.A.rows;
  QxMatrix G;
  if (is_antisymmetric(S.A))
    G = identity_qx(n);
  else if (is_infinitesimally_symplectic(S.A))
    G = symplectic_J(static_cast<int>(n / 2));
  else
    throw MathError("kolchin_intertwiner: matrix is neither antisymmetric nor infinitesimally symplectic");
  if (c.size() != n) throw MathError("kolchin_intertwiner: form has the wrong length");
  QxMatrix P(n, n);
  QxVector row = c;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) P(k, j) = row[j];
    QxVector next(n);
    for (std::size_t j = 0; j < n; ++j) {
      next[j] = row[j].derivative();
      for (std::size_t i = 0; i < n; ++i)
        if (!row[i].is_zero() && !S.A(i, j).is_zero()) next[j] += row[i] * S.A(i, j);
    }
    row = next;
  }
  if (rank(P) < n) throw MathError("kolchin_intertwiner: form is not cyclic");
  QxVector e(n);
  e[n - 1] = RatFunc(1);
  QxVector u = solve(P, e);
  QxVector gu(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!G(j, i).is_zero()) gu[i] += G(j, i) * u[j];
  return DiffOperator(solve(transpose(P), gu));
}

DiffOperator sym_power_equivalent(const DiffOperator& L2, int m, int n) {
  if (L2.order() != 2) throw MathError("sym_power_equivalent: operator must have order 2");
  if (m < 2) throw MathError("sym_power_equivalent: m must be at least 2");
  if (n < 1) throw MathError("sym_power_equivalent: shift must be positive");
  DiffOperator S = sym_power(L2, m).op;
  return transform_solutions(S, DiffOperator::D(n)).ltilde;
}

}  // namespace adjtower

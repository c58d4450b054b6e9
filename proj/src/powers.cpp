#include "adjtower/powers.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "adjtower/modular.hpp"
#include "adjtower/selfadjoint.hpp"

namespace adjtower {

namespace {

using zpoly::ZPoly;

struct Entry {
  int col;
  ZPoly p;
};

// Free Q(x)-module with a derivation: delta(v) = dx(v) + v * (rows / ell),
// where dx is d/dx or x d/dx.
struct Module {
  int dim = 0;
  bool theta = false;
  ZPoly ell;
  std::vector<std::vector<Entry>> rows;
};

ZPoly to_z(const Poly& p) {
  ZPoly z(p.coeffs().size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (p.coeffs()[i].get_den() != 1) throw MathError("internal: expected an integer polynomial");
    z[i] = p.coeffs()[i].get_num();
  }
  return z;
}

ZPoly dx(const ZPoly& p, bool theta) {
  if (!theta) return zpoly::derivative(p);
  ZPoly r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] * static_cast<unsigned long>(i);
  zpoly::trim(r);
  return r;
}

struct ModTrial {
  modp::Field F;
  modp::u64 t;
  std::vector<std::pair<int, std::vector<modp::u64>>> rows;
  explicit ModTrial(modp::u64 p, modp::u64 point) : F(p), t(F.to(point)) {}

  // True if the vector is independent of the stored ones (and stores it).
  bool insert(const std::vector<ZPoly>& w) {
    std::vector<modp::u64> v(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i].empty() ? 0 : modp::eval(F, zpoly::reduce(F, w[i]), t);
    for (auto& [pc, row] : rows) {
      modp::u64 f = v[pc];
      if (!f) continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (row[i]) v[i] = F.sub(v[i], F.mul(f, row[i]));
    }
    std::size_t piv = 0;
    while (piv < v.size() && v[piv] == 0) ++piv;
    if (piv == v.size()) return false;
    modp::u64 inv = F.inv(v[piv]);
    for (auto& e : v) e = F.mul(e, inv);
    rows.emplace_back(static_cast<int>(piv), std::move(v));
    return true;
  }
};

// Coefficients c_0..c_k (k minimal) with sum c_i delta^i(v0) = 0, where
// v0 = sigma0 * w0 / ell^s0.
std::vector<RatFunc> first_dependence(const Module& M, std::vector<ZPoly> w, int s, Rational sigma) {
  struct Stored {
    std::vector<ZPoly> w;
    int s;
    Rational sigma;
  };
  std::vector<Stored> hist;
  std::mt19937_64 rng(0x5eed);
  std::vector<ModTrial> trials;
  for (int i = 0; i < 2; ++i) trials.emplace_back(modp::nth_prime(40 + i), 1 + rng() % 1000000007ULL);
  ZPoly dell = dx(M.ell, M.theta);
  RatFunc ellf = RatFunc::from_z(1, M.ell, {1});

  for (int k = 0; k <= M.dim; ++k) {
    bool indep = false;
    for (auto& tr : trials) indep = tr.insert(w) || indep;
    hist.push_back({w, s, sigma});
    if (!indep) {
      QxMatrix A(M.dim, hist.size());
      for (std::size_t j = 0; j < hist.size(); ++j)
        for (int i = 0; i < M.dim; ++i)
          if (!hist[j].w[i].empty()) A(i, j) = RatFunc::from_z(1, hist[j].w[i], {1});
      for (const auto& v : nullspace(A)) {
        if (v.back().is_zero()) continue;
        std::vector<RatFunc> c(hist.size());
        for (std::size_t j = 0; j < hist.size(); ++j)
          c[j] = (v[j] * ellf.pow(hist[j].s)).scaled(1 / hist[j].sigma);
        return c;
      }
    }
    if (k == M.dim) break;
    // next derivative
    std::vector<ZPoly> nw(M.dim);
    mpz_class sm(s);
    for (int i = 0; i < M.dim; ++i) {
      if (w[i].empty()) continue;
      nw[i] = zpoly::sub(zpoly::mul(M.ell, dx(w[i], M.theta)), zpoly::scale(zpoly::mul(dell, w[i]), sm));
    }
    for (int j = 0; j < M.dim; ++j) {
      if (w[j].empty()) continue;
      for (const auto& e : M.rows[j]) nw[e.col] = zpoly::add(nw[e.col], zpoly::mul(w[j], e.p));
    }
    mpz_class g = 0;
    for (auto& p : nw)
      if (!p.empty()) g = gcd(g, zpoly::content(p));
    if (g == 0) {
      std::vector<RatFunc> c(hist.size() + 1);
      c.back() = RatFunc(1);
      return c;
    }
    if (g != 1)
      for (auto& p : nw)
        if (!p.empty()) p = zpoly::divexact_scalar(p, g);
    w = std::move(nw);
    s += 1;
    sigma *= g;
  }
  throw MathError("internal: no dependence found in the power module");
}

DiffOperator monic(const DiffOperator& L) { return L.left_mul(L.lc().inverse()); }

DiffOperator from_delta(const std::vector<RatFunc>& c, bool theta) {
  return monic(theta ? from_theta_coefficients(c) : DiffOperator(c));
}

int max_degree(const std::vector<Poly>& v) {
  int d = 0;
  for (const auto& p : v) d = std::max(d, p.degree());
  return d;
}

// Companion rows for delta^i y, i < n, in the cheaper of the Dx and theta forms.
Module base_module(const DiffOperator& L, std::vector<std::vector<Entry>>& base) {
  if (L.order() < 1) throw MathError("power: operator must have positive order");
  auto cd = L.cleared();
  auto ct = DiffOperator(theta_coefficients(L)).cleared();
  Module M;
  M.theta = max_degree(ct) < max_degree(cd);
  const auto& c = M.theta ? ct : cd;
  int n = L.order();
  M.ell = to_z(c[n]);
  base.assign(n, {});
  for (int i = 0; i + 1 < n; ++i) base[i].push_back({i + 1, M.ell});
  for (int k = 0; k < n; ++k)
    if (!c[k].is_zero()) base[n - 1].push_back({k, zpoly::neg(to_z(c[k]))});
  return M;
}

void enumerate(int n, int m, bool strict, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == m) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    enumerate(n, m, strict, strict ? i + 1 : i, cur, out);
    cur.pop_back();
  }
}

PowerResult power(const DiffOperator& L, int m, bool exterior, int cap) {
  if (m < 1) throw MathError("power: exponent must be positive");
  int n = L.order();
  if (n < 1) throw MathError("power: operator must have positive order");
  if (exterior && m > n) throw MathError("power: exterior power exponent exceeds the order");
  std::vector<std::vector<int>> basis;
  std::vector<int> cur;
  enumerate(n, m, exterior, 0, cur, basis);
  int dim = static_cast<int>(basis.size());
  if (dim > cap)
    throw MathError("power: module dimension " + std::to_string(dim) + " exceeds the cap " + std::to_string(cap));
  std::vector<std::vector<Entry>> base;
  Module M = base_module(L, base);
  M.dim = dim;
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < dim; ++i) index[basis[i]] = i;
  M.rows.assign(dim, {});
  for (int j = 0; j < dim; ++j) {
    std::map<int, ZPoly> acc;
    for (int t = 0; t < m; ++t)
      for (const auto& e : base[basis[j][t]]) {
        std::vector<int> tup = basis[j];
        tup[t] = e.col;
        int sign = 1;
        if (exterior) {
          // sort with sign, zero on repeats
          for (std::size_t a = 0; a < tup.size(); ++a)
            for (std::size_t b = a + 1; b < tup.size(); ++b) {
              if (tup[a] == tup[b]) sign = 0;
              else if (tup[a] > tup[b]) sign = -sign;
            }
          if (sign == 0) continue;
        }
        std::sort(tup.begin(), tup.end());
        int col = index.at(tup);
        ZPoly p = sign > 0 ? e.p : zpoly::neg(e.p);
        auto it = acc.find(col);
        if (it == acc.end()) acc.emplace(col, p);
        else it->second = zpoly::add(it->second, p);
      }
    for (auto& [col, p] : acc)
      if (!zpoly::is_zero(p)) M.rows[j].push_back({col, p});
  }
  std::vector<ZPoly> w0(dim);
  w0[0] = ZPoly{1};
  auto c = first_dependence(M, w0, 0, 1);
  PowerResult r;
  r.op = from_delta(c, M.theta);
  r.full_dim = dim;
  r.drop = r.op.order() < dim;
  return r;
}

}  // namespace

CompanionSystem companion(const DiffOperator& L) {
  int n = L.order();
  if (n < 1) throw MathError("companion: operator must have positive order");
  CompanionSystem S;
  S.A = QxMatrix(n, n);
  for (int i = 0; i + 1 < n; ++i) S.A(i, i + 1) = RatFunc(1);
  RatFunc inv = L.lc().inverse();
  for (int k = 0; k < n; ++k) S.A(n - 1, k) = -(L.coeff(k) * inv);
  S.note = "companion of an operator of order " + std::to_string(n);
  return S;
}

PowerResult sym_square(const DiffOperator& L, int cap) {
  if (L.order() < 2) throw MathError("sym_square: order must be at least 2");
  return power(L, 2, false, cap);
}

PowerResult ext_square(const DiffOperator& L, int cap) {
  if (L.order() < 2) throw MathError("ext_square: order must be at least 2");
  return power(L, 2, true, cap);
}

PowerResult sym_power(const DiffOperator& L, int m, int cap) { return power(L, m, false, cap); }
PowerResult ext_power(const DiffOperator& L, int m, int cap) { return power(L, m, true, cap); }

CyclicResult cyclic_operator(const CompanionSystem& S, const QxVector& c) {
  int n = static_cast<int>(S.A.rows);
  if (S.A.cols != S.A.rows) throw MathError("cyclic_operator: matrix must be square");
  if (static_cast<int>(c.size()) != n) throw MathError("cyclic_operator: form has the wrong length");
  bool nonzero = false;
  for (const auto& f : c) nonzero = nonzero || !f.is_zero();
  if (!nonzero) throw MathError("cyclic_operator: zero linear form");

  // common denominator of A and of c
  Poly den(1), cden(1);
  for (const auto& f : S.A.a) den = lcm(den, f.den());
  for (const auto& f : c) cden = lcm(cden, f.den());
  Poly ell = den * cden;
  std::vector<Poly> entries;
  for (const auto& f : S.A.a) entries.push_back(f.is_zero() ? Poly() : divmod(f.num() * ell, f.den()).first);
  std::vector<Poly> w0p;
  for (const auto& f : c) w0p.push_back(f.is_zero() ? Poly() : divmod(f.num() * ell, f.den()).first);
  Integer lam = 1;
  auto absorb = [&](const Poly& p) {
    for (const auto& q : p.coeffs()) lam = lcm(lam, Integer(q.get_den()));
  };
  absorb(ell);
  for (const auto& p : entries) absorb(p);
  Integer mu = 1;
  for (const auto& p : w0p)
    for (const auto& q : p.coeffs()) mu = lcm(mu, Integer(q.get_den()));

  Module M;
  M.dim = n;
  M.ell = to_z(ell.scaled(Rational(lam)));
  M.rows.assign(n, {});
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Poly& p = entries[j * n + i];
      if (!p.is_zero()) M.rows[j].push_back({i, to_z(p.scaled(Rational(lam)))});
    }
  std::vector<ZPoly> w0(n);
  for (int i = 0; i < n; ++i)
    if (!w0p[i].is_zero()) w0[i] = to_z(w0p[i].scaled(Rational(mu)));
  // c = w0 / (mu * ell) = (lam / mu) * w0 / ell_z
  auto coeffs = first_dependence(M, w0, 1, Rational(lam) / Rational(mu));
  CyclicResult r;
  r.op = from_delta(coeffs, false);
  r.cyclic = r.op.order() == n;
  return r;
}

CompanionSystem kolchin_orthogonal_system(int q, int degree, std::uint64_t seed) {
  if (q < 2) throw MathError("kolchin_orthogonal_system: q must be at least 2");
  std::mt19937_64 rng(seed);
  CompanionSystem S;
  S.A = QxMatrix(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j) {
      RatFunc a(random_poly(rng, degree, true));
      S.A(i, j) = a;
      S.A(j, i) = -a;
    }
  S.note = "antisymmetric " + std::to_string(q) + "x" + std::to_string(q) + ", degree " + std::to_string(degree) +
           ", seed " + std::to_string(seed);
  return S;
}

QxMatrix symplectic_J(int p) {
  QxMatrix J(2 * p, 2 * p);
  for (int i = 0; i < p; ++i) {
    J(i, p + i) = RatFunc(1);
    J(p + i, i) = RatFunc(-1);
  }
  return J;
}

CompanionSystem kolchin_symplectic_system(int p, int degree, std::uint64_t seed) {
  if (p < 1) throw MathError("kolchin_symplectic_system: p must be at least 1");
  std::mt19937_64 rng(seed);
  int n = 2 * p;
  QxMatrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      RatFunc a(random_poly(rng, degree, true));
      A(i, j) = a;
      A(j, i) = a;
    }
  CompanionSystem S;
  S.A = mat_mul(symplectic_J(p), A);
  S.note = "J times symmetric " + std::to_string(n) + "x" + std::to_string(n) + ", degree " + std::to_string(degree) +
           ", seed " + std::to_string(seed);
  return S;
}

bool is_antisymmetric(const QxMatrix& A) {
  if (A.rows != A.cols) return false;
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j)
      if (A(i, j) != -A(j, i)) return false;
  return true;
}

bool is_infinitesimally_symplectic(const QxMatrix& B) {
  if (B.rows != B.cols || B.rows % 2) return false;
  QxMatrix J = symplectic_J(static_cast<int>(B.rows / 2));
  QxMatrix L = mat_mul(transpose(B), J), R = mat_mul(J, B);
  for (std::size_t i = 0; i < L.a.size(); ++i)
    if (!(L.a[i] + R.a[i]).is_zero()) return false;
  return true;
}

}  // namespace adjtower

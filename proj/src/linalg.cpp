#include "adjtower/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <random>
#include <stdexcept>
#include <thread>

#include "adjtower/modular.hpp"

namespace adjtower {

using modp::Field;
using modp::PolyP;
using modp::u64;
using zpoly::ZPoly;

namespace {

std::atomic<unsigned> g_threads{1};

struct PolyMat {
  std::size_t rows = 0, cols = 0;
  std::vector<ZPoly> a;
  int maxdeg = 0;
  const ZPoly& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

PolyMat clear_rows(const QxMatrix& M) {
  PolyMat P;
  P.rows = M.rows;
  P.cols = M.cols;
  P.a.resize(M.rows * M.cols);
  for (std::size_t i = 0; i < M.rows; ++i) {
    ZPoly L{1};
    Integer dl = 1;
    for (std::size_t j = 0; j < M.cols; ++j) {
      const RatFunc& e = M(i, j);
      if (e.is_zero()) continue;
      if (!zpoly::is_one(e.zden()) && e.zden() != L) {
        ZPoly g = zpoly::gcd(L, e.zden());
        L = zpoly::mul(L, zpoly::divexact(e.zden(), g));
      }
      mpz_lcm(dl.get_mpz_t(), dl.get_mpz_t(), e.scale().get_den().get_mpz_t());
    }
    Integer cont = 0;
    for (std::size_t j = 0; j < M.cols; ++j) {
      const RatFunc& e = M(i, j);
      if (e.is_zero()) continue;
      Integer k = e.scale().get_num() * (dl / e.scale().get_den());
      ZPoly v = zpoly::scale(zpoly::mul(e.znum(), zpoly::divexact(L, e.zden())), k);
      Integer c = zpoly::content(v);
      mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), c.get_mpz_t());
      P.a[i * M.cols + j] = std::move(v);
    }
    if (cont > 1)
      for (std::size_t j = 0; j < M.cols; ++j) P.a[i * M.cols + j] = zpoly::divexact_scalar(P.a[i * M.cols + j], cont);
  }
  for (const auto& e : P.a) P.maxdeg = std::max(P.maxdeg, zpoly::degree(e));
  return P;
}

PolyMat clear_rows(const QMatrix& M) {
  PolyMat P;
  P.rows = M.rows;
  P.cols = M.cols;
  P.a.resize(M.rows * M.cols);
  for (std::size_t i = 0; i < M.rows; ++i) {
    Integer dl = 1;
    for (std::size_t j = 0; j < M.cols; ++j)
      mpz_lcm(dl.get_mpz_t(), dl.get_mpz_t(), M(i, j).get_den().get_mpz_t());
    Integer cont = 0;
    for (std::size_t j = 0; j < M.cols; ++j) {
      const Rational& e = M(i, j);
      if (sgn(e) == 0) continue;
      Integer v = e.get_num() * (dl / e.get_den());
      mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), v.get_mpz_t());
      P.a[i * M.cols + j] = ZPoly{v};
    }
    if (cont > 1)
      for (std::size_t j = 0; j < M.cols; ++j) P.a[i * M.cols + j] = zpoly::divexact_scalar(P.a[i * M.cols + j], cont);
  }
  return P;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(const Field& F, std::vector<u64>& A, std::size_t rows, std::size_t cols) {
  std::vector<int> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && A[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(A[p * cols + j], A[r * cols + j]);
    u64* R = &A[r * cols];
    u64 inv = F.inv(R[c]);
    for (std::size_t j = c; j < cols; ++j) R[j] = F.mul(R[j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      u64* S = &A[i * cols];
      u64 f = S[c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        if (R[j]) S[j] = F.sub(S[j], F.mul(f, R[j]));
    }
    piv.push_back(static_cast<int>(c));
    ++r;
  }
  return piv;
}

struct Reduced {
  std::vector<PolyP> a;
};

Reduced reduce_mat(const Field& F, const PolyMat& M) {
  Reduced R;
  R.a.resize(M.a.size());
  for (std::size_t k = 0; k < M.a.size(); ++k) R.a[k] = zpoly::reduce(F, M.a[k]);
  return R;
}

std::vector<u64> eval_mat(const Field& F, const Reduced& R, u64 pt) {
  std::vector<u64> A(R.a.size());
  for (std::size_t k = 0; k < R.a.size(); ++k) A[k] = modp::eval(F, R.a[k], pt);
  return A;
}

std::vector<int> free_columns(const std::vector<int>& piv, std::size_t cols) {
  std::vector<int> fr;
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (k < piv.size() && piv[k] == static_cast<int>(c)) {
      ++k;
      continue;
    }
    fr.push_back(static_cast<int>(c));
  }
  return fr;
}

// Pivot profile of the generic fibre: maximal rank, lexicographically
// smallest pivots among several random specializations.
std::vector<int> generic_profile(const PolyMat& M, std::mt19937_64& rng) {
  std::vector<int> best;
  bool have = false;
  for (int t = 0; t < 3; ++t) {
    Field F(modp::nth_prime(t));
    Reduced R = reduce_mat(F, M);
    u64 pt = F.to(rng() % (F.prime() - 1) + 1);
    std::vector<u64> A = eval_mat(F, R, pt);
    std::vector<int> piv = rref(F, A, M.rows, M.cols);
    if (!have || piv.size() > best.size() || (piv.size() == best.size() && piv < best)) {
      best = piv;
      have = true;
    }
  }
  return best;
}

// Inverses of pts[i] - pts[i - j] for 1 <= j <= i < K, stored row by row,
// computed with a single field inversion.
std::vector<u64> newton_table(const Field& F, const std::vector<u64>& pts, std::size_t K) {
  std::vector<u64> d;
  d.reserve(K * (K - 1) / 2);
  for (std::size_t j = 1; j < K; ++j)
    for (std::size_t i = j; i < K; ++i) d.push_back(F.sub(pts[i], pts[i - j]));
  std::vector<u64> pre(d.size() + 1);
  pre[0] = F.one();
  for (std::size_t k = 0; k < d.size(); ++k) pre[k + 1] = F.mul(pre[k], d[k]);
  u64 inv = F.inv(pre.back());
  for (std::size_t k = d.size(); k-- > 0;) {
    u64 dk = d[k];
    d[k] = F.mul(inv, pre[k]);
    inv = F.mul(inv, dk);
  }
  return d;
}

// Newton interpolation through (pts[i], vals[i]), i < K.
PolyP interpolate(const Field& F, const std::vector<u64>& pts, const std::vector<u64>& vals, std::size_t K,
                  const std::vector<u64>& table) {
  std::vector<u64> c(vals.begin(), vals.begin() + K);
  std::size_t t = 0;
  for (std::size_t j = 1; j < K; ++j) {
    // Row j of the table holds entries for i = j..K-1; update from the top.
    std::size_t row = t;
    for (std::size_t i = K - 1; i >= j; --i) {
      c[i] = F.mul(F.sub(c[i], c[i - 1]), table[row + (i - j)]);
      if (i == j) break;
    }
    t += K - j;
  }
  PolyP p{c[K - 1]};
  for (std::size_t j = K - 1; j-- > 0;) {
    PolyP q(p.size() + 1, 0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      q[k + 1] = F.add(q[k + 1], p[k]);
      q[k] = F.sub(q[k], F.mul(p[k], pts[j]));
    }
    q[0] = F.add(q[0], c[j]);
    p = std::move(q);
  }
  modp::trim(p);
  return p;
}

// Division with remainder mod p.
void divrem(const Field& F, const PolyP& a, const PolyP& b, PolyP& q, PolyP& r) {
  r = a;
  modp::trim(r);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, 0);
  u64 li = F.inv(b.back());
  std::size_t db = b.size() - 1;
  while (r.size() >= b.size()) {
    u64 t = F.mul(r.back(), li);
    std::size_t shift = r.size() - b.size();
    q[shift] = t;
    for (std::size_t j = 0; j <= db; ++j) r[shift + j] = F.sub(r[shift + j], F.mul(t, b[j]));
    r.pop_back();
    modp::trim(r);
  }
}

PolyP poly_sub_mul(const Field& F, const PolyP& a, const PolyP& q, const PolyP& b) {
  PolyP qb = modp::mul(F, q, b);
  PolyP r(std::max(a.size(), qb.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < qb.size(); ++i) r[i] = F.sub(r[i], qb[i]);
  modp::trim(r);
  return r;
}

// Maximal-quotient rational reconstruction of u modulo m.
void mqrr(const Field& F, const PolyP& m, const PolyP& u, PolyP& n, PolyP& d) {
  if (u.empty()) {
    n.clear();
    d = {F.one()};
    return;
  }
  PolyP r0 = m, r1 = u, t0, t1{F.one()};
  int best = -1;
  PolyP bn, bd;
  while (!r1.empty()) {
    PolyP q, r2;
    divrem(F, r0, r1, q, r2);
    int dq = static_cast<int>(q.size()) - 1;
    if (dq > best) {
      best = dq;
      bn = r1;
      bd = t1;
    }
    PolyP t2 = poly_sub_mul(F, t0, q, t1);
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u64 li = F.inv(bd.back());
  for (auto& c : bn) c = F.mul(c, li);
  for (auto& c : bd) c = F.mul(c, li);
  n = std::move(bn);
  d = std::move(bd);
}

struct EntryImage {
  PolyP num, den;  // standard representation, den monic
};

struct PrimeResult {
  bool ok = false;
  std::vector<EntryImage> entries;
};

// Kernel entries R[i][f] (pivot row i, free column f) as rational functions
// modulo one prime. With K > 0 the number of interpolation points is fixed,
// otherwise it doubles up to kmax.
PrimeResult image_for_prime(const PolyMat& M, const std::vector<int>& piv, const std::vector<int>& fr, u64 prime,
                            std::uint64_t seed, std::size_t Kfixed, std::size_t kmax) {
  PrimeResult res;
  Field F(prime);
  Reduced R = reduce_mat(F, M);
  std::mt19937_64 rng(seed);
  const std::size_t ne = piv.size() * fr.size();
  std::vector<std::vector<u64>> vals(ne);
  std::vector<u64> pts;

  auto add_point = [&]() -> bool {
    for (int attempt = 0; attempt < 8; ++attempt) {
      u64 pt = F.to(rng() % (F.prime() - 1) + 1);
      if (std::find(pts.begin(), pts.end(), pt) != pts.end()) continue;
      std::vector<u64> A = eval_mat(F, R, pt);
      if (rref(F, A, M.rows, M.cols) != piv) continue;
      pts.push_back(pt);
      for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t k = 0; k < fr.size(); ++k) vals[i * fr.size() + k].push_back(A[i * M.cols + fr[k]]);
      return true;
    }
    return false;
  };

  res.entries.resize(ne);
  if (M.maxdeg == 0) {
    if (!add_point()) return res;
    for (std::size_t e = 0; e < ne; ++e) {
      res.entries[e].num = vals[e][0] ? PolyP{F.from(vals[e][0])} : PolyP{};
      res.entries[e].den = {1};
    }
    res.ok = true;
    return res;
  }

  const std::size_t C = 3;
  std::size_t K = Kfixed ? Kfixed : std::min<std::size_t>(16, kmax);
  while (true) {
    while (pts.size() < K + C)
      if (!add_point()) return res;
    PolyP m{F.one()};
    for (std::size_t j = 0; j < K; ++j) {
      PolyP lin{F.neg(pts[j]), F.one()};
      m = modp::mul(F, m, lin);
    }
    std::vector<u64> table = newton_table(F, pts, K);
    bool all = true;
    for (std::size_t e = 0; e < ne && all; ++e) {
      PolyP u = interpolate(F, pts, vals[e], K, table);
      PolyP n, d;
      mqrr(F, m, u, n, d);
      for (std::size_t j = K; j < K + C; ++j) {
        if (F.mul(vals[e][j], modp::eval(F, d, pts[j])) != modp::eval(F, n, pts[j])) {
          all = false;
          break;
        }
      }
      if (all) {
        for (auto& c : n) c = F.from(c);
        for (auto& c : d) c = F.from(c);
        res.entries[e] = {std::move(n), std::move(d)};
      }
    }
    if (all) {
      res.ok = true;
      return res;
    }
    if (Kfixed || K >= kmax) return res;
    K = std::min(2 * K, kmax);
  }
}

bool ratrecon(const Integer& a, const Integer& M, const Integer& bound, const Integer& L, Rational& out) {
  // Common-denominator shortcut first.
  if (L <= bound) {
    Integer t = a * L % M;
    if (t > M / 2) t -= M;
    if (abs(t) <= bound) {
      out = Rational(t, L);
      out.canonicalize();
      return true;
    }
  }
  Integer r0 = M, r1 = a, t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (sgn(t1) == 0 || abs(t1) > bound) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

struct Layout {
  std::vector<int> dn, dd;
  std::vector<std::size_t> off;
  std::size_t total = 0;
};

Layout layout_of(const std::vector<EntryImage>& img) {
  Layout L;
  for (const auto& e : img) {
    L.dn.push_back(static_cast<int>(e.num.size()) - 1);
    L.dd.push_back(static_cast<int>(e.den.size()) - 1);
    L.off.push_back(L.total);
    L.total += e.num.size() + e.den.size() - 1;  // monic leading term omitted
  }
  return L;
}

// -1 lower, 0 same, 1 higher degrees somewhere (unlucky reference).
int compare_layout(const Layout& ref, const std::vector<EntryImage>& img) {
  bool lower = false;
  for (std::size_t e = 0; e < img.size(); ++e) {
    int dn = static_cast<int>(img[e].num.size()) - 1, dd = static_cast<int>(img[e].den.size()) - 1;
    if (dn > ref.dn[e] || dd > ref.dd[e]) return 1;
    if (dn < ref.dn[e] || dd < ref.dd[e]) lower = true;
  }
  return lower ? -1 : 0;
}

std::vector<u64> flatten(const Layout& L, const std::vector<EntryImage>& img) {
  std::vector<u64> f(L.total);
  for (std::size_t e = 0; e < img.size(); ++e) {
    std::size_t o = L.off[e];
    for (std::size_t k = 0; k < img[e].num.size(); ++k) f[o++] = img[e].num[k];
    for (std::size_t k = 0; k + 1 < img[e].den.size(); ++k) f[o++] = img[e].den[k];
  }
  return f;
}

// Exact check that P * v = 0 for a candidate kernel vector.
bool verify_kernel_vector(const PolyMat& P, const std::vector<RatFunc>& v) {
  ZPoly L{1};
  Integer dl = 1;
  for (const auto& e : v) {
    if (e.is_zero()) continue;
    if (!zpoly::is_one(e.zden()) && e.zden() != L) {
      ZPoly g = zpoly::gcd(L, e.zden());
      L = zpoly::mul(L, zpoly::divexact(e.zden(), g));
    }
    mpz_lcm(dl.get_mpz_t(), dl.get_mpz_t(), e.scale().get_den().get_mpz_t());
  }
  std::vector<ZPoly> w(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const RatFunc& e = v[j];
    if (e.is_zero()) continue;
    Integer k = e.scale().get_num() * (dl / e.scale().get_den());
    w[j] = zpoly::scale(zpoly::mul(e.znum(), zpoly::divexact(L, e.zden())), k);
  }
  for (std::size_t i = 0; i < P.rows; ++i) {
    ZPoly acc;
    for (std::size_t j = 0; j < P.cols; ++j) {
      if (w[j].empty() || P.at(i, j).empty()) continue;
      acc = zpoly::add(acc, zpoly::mul(P.at(i, j), w[j]));
    }
    if (!acc.empty()) return false;
  }
  return true;
}

template <class F>
void parallel_for(std::size_t n, F&& f) {
  unsigned t = std::max(1u, g_threads.load());
  if (t == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < std::min<std::size_t>(t, n); ++k)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) f(i);
    });
  for (auto& th : pool) th.join();
}

std::vector<std::vector<RatFunc>> kernel_engine(const PolyMat& P) {
  if (P.cols == 0) return {};
  std::mt19937_64 rng(0x5eed1234abcdULL);
  for (int restart = 0; restart < 4; ++restart) {
    std::vector<int> piv = generic_profile(P, rng);
    std::vector<int> fr = free_columns(piv, P.cols);
    if (fr.empty()) return {};
    auto assemble = [&](const std::vector<RatFunc>& ent) {
      std::vector<std::vector<RatFunc>> basis;
      for (std::size_t k = 0; k < fr.size(); ++k) {
        std::vector<RatFunc> v(P.cols);
        v[fr[k]] = RatFunc(1);
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -ent[i * fr.size() + k];
        basis.push_back(std::move(v));
      }
      return basis;
    };
    if (piv.empty()) return assemble({});

    // Degree bound for any entry: sum of the largest row degrees.
    std::vector<int> rowdeg(P.rows, 0);
    for (std::size_t i = 0; i < P.rows; ++i)
      for (std::size_t j = 0; j < P.cols; ++j) rowdeg[i] = std::max(rowdeg[i], zpoly::degree(P.at(i, j)));
    std::sort(rowdeg.rbegin(), rowdeg.rend());
    std::size_t B = 0;
    for (std::size_t i = 0; i < piv.size() && i < rowdeg.size(); ++i) B += rowdeg[i];
    std::size_t kmax = 2 * B + 2;

    std::size_t pidx = 3 + restart * 100000;
    Layout lay;
    bool have_ref = false;
    std::size_t Kfixed = 0;
    std::vector<Integer> X;
    Integer Mod = 1;
    std::size_t used = 0, next_check = 1;
    std::vector<std::vector<RatFunc>> candidate;
    std::vector<Rational> cand_coeffs;
    bool have_cand = false;
    int failures = 0;

    while (failures < 40) {
      // Fetch a batch of prime images (one per thread).
      std::size_t batch = have_ref ? std::max(1u, g_threads.load()) : 1;
      std::vector<PrimeResult> imgs(batch);
      std::vector<u64> primes(batch);
      std::vector<std::uint64_t> seeds(batch);
      for (std::size_t b = 0; b < batch; ++b) {
        primes[b] = modp::nth_prime(pidx + b);
        seeds[b] = rng();
      }
      parallel_for(batch, [&](std::size_t b) {
        imgs[b] = image_for_prime(P, piv, fr, primes[b], seeds[b], Kfixed, kmax);
      });
      pidx += batch;
      for (std::size_t b = 0; b < batch; ++b) {
        PrimeResult& img = imgs[b];
        if (!img.ok) {
          ++failures;
          continue;
        }
        Field F(primes[b]);
        if (!have_ref) {
          lay = layout_of(img.entries);
          have_ref = true;
          std::size_t K = 0;
          for (std::size_t e = 0; e < lay.dn.size(); ++e)
            K = std::max<std::size_t>(K, static_cast<std::size_t>(lay.dn[e] + 1 + lay.dd[e] + 1));
          Kfixed = P.maxdeg == 0 ? 0 : std::max<std::size_t>(K + 1, 2);
          X.assign(lay.total, 0);
          Mod = 1;
          used = 0;
          next_check = 1;
        } else {
          int c = compare_layout(lay, img.entries);
          if (c < 0) {
            ++failures;
            continue;
          }
          if (c > 0) {
            // The reference prime was unlucky; start over from this one.
            lay = layout_of(img.entries);
            X.assign(lay.total, 0);
            Mod = 1;
            used = 0;
            next_check = 1;
            have_cand = false;
          }
        }
        std::vector<u64> f = flatten(lay, img.entries);
        if (have_cand) {
          bool agree = true;
          for (std::size_t k = 0; k < f.size() && agree; ++k) {
            bool bad = false;
            u64 r = F.from(F.reduce(cand_coeffs[k], &bad));
            if (bad || r != f[k]) agree = false;
          }
          if (agree) {
            bool ok = true;
            for (const auto& v : candidate)
              if (!verify_kernel_vector(P, v)) {
                ok = false;
                break;
              }
            if (ok) return candidate;
          }
          have_cand = false;
        }
        // Incremental CRT.
        Integer p = static_cast<unsigned long>(primes[b]);
        if (used == 0) {
          for (std::size_t k = 0; k < f.size(); ++k) X[k] = static_cast<unsigned long>(f[k]);
        } else {
          u64 minv = F.inv(F.reduce(Mod));
          for (std::size_t k = 0; k < f.size(); ++k) {
            u64 xr = F.reduce(X[k]);
            u64 t = F.from(F.mul(F.sub(F.to(f[k]), xr), minv));
            if (t) X[k] += Mod * static_cast<unsigned long>(t);
          }
        }
        Mod *= p;
        ++used;
        if (used < next_check) continue;
        next_check = std::max(next_check + 1, next_check * 3 / 2);
        Integer bound;
        mpz_sqrt(bound.get_mpz_t(), Integer(Mod / 2).get_mpz_t());
        Integer Lden = 1;
        std::vector<Rational> coeffs(lay.total);
        bool ok = true;
        for (std::size_t k = 0; k < lay.total; ++k) {
          if (!ratrecon(X[k], Mod, bound, Lden, coeffs[k])) {
            ok = false;
            break;
          }
          mpz_lcm(Lden.get_mpz_t(), Lden.get_mpz_t(), coeffs[k].get_den().get_mpz_t());
        }
        if (!ok) continue;
        std::vector<RatFunc> ents(lay.dn.size());
        for (std::size_t e = 0; e < lay.dn.size(); ++e) {
          std::size_t o = lay.off[e];
          std::vector<Rational> n(coeffs.begin() + o, coeffs.begin() + o + lay.dn[e] + 1);
          o += lay.dn[e] + 1;
          std::vector<Rational> d(coeffs.begin() + o, coeffs.begin() + o + lay.dd[e]);
          d.push_back(1);
          ents[e] = RatFunc(Poly(std::move(n)), Poly(std::move(d)));
        }
        candidate = assemble(ents);
        cand_coeffs = std::move(coeffs);
        have_cand = true;
      }
    }
  }
  throw std::runtime_error("nullspace: modular reconstruction did not converge");
}

}  // namespace

void set_threads(unsigned n) { g_threads = std::max(1u, n); }
unsigned threads() { return g_threads.load(); }

std::vector<QxVector> nullspace(const QxMatrix& M) { return kernel_engine(clear_rows(M)); }

std::vector<QVector> nullspace(const QMatrix& M) {
  auto k = kernel_engine(clear_rows(M));
  std::vector<QVector> out;
  for (const auto& v : k) {
    QVector w;
    for (const auto& e : v) w.push_back(e.constant_value());
    out.push_back(std::move(w));
  }
  return out;
}

std::size_t rank(const QxMatrix& M) { return M.cols - nullspace(M).size(); }

std::vector<QxVector> nullspace_naive(const QxMatrix& M0) {
  QxMatrix A = M0;
  std::vector<int> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols && r < A.rows; ++c) {
    std::size_t p = r;
    while (p < A.rows && A(p, c).is_zero()) ++p;
    if (p == A.rows) continue;
    for (std::size_t j = 0; j < A.cols; ++j) std::swap(A(p, j), A(r, j));
    RatFunc inv = A(r, c).inverse();
    for (std::size_t j = c; j < A.cols; ++j) A(r, j) *= inv;
    for (std::size_t i = 0; i < A.rows; ++i) {
      if (i == r || A(i, c).is_zero()) continue;
      RatFunc f = A(i, c);
      for (std::size_t j = c; j < A.cols; ++j) A(i, j) -= f * A(r, j);
    }
    piv.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<int> fr = free_columns(piv, A.cols);
  std::vector<QxVector> out;
  for (int f : fr) {
    QxVector v(A.cols);
    v[f] = RatFunc(1);
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -A(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

QxMatrix mat_mul(const QxMatrix& A, const QxMatrix& B) {
  if (A.cols != B.rows) throw std::invalid_argument("matrix dimension mismatch");
  QxMatrix C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      if (A(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < B.cols; ++j)
        if (!B(k, j).is_zero()) C(i, j) += A(i, k) * B(k, j);
    }
  return C;
}

QxMatrix transpose(const QxMatrix& A) {
  QxMatrix T(A.cols, A.rows);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

QxMatrix identity_qx(std::size_t n) {
  QxMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = RatFunc(1);
  return I;
}

}  // namespace adjtower

#include "adjtower/diffop.hpp"

#include <sstream>
#include <stdexcept>

#include "adjtower/errors.hpp"

namespace adjtower {

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

DiffOperator::DiffOperator(const RatFunc& f) {
  if (!f.is_zero()) c_.push_back(f);
}

DiffOperator::DiffOperator(std::vector<RatFunc> coeffs) : c_(std::move(coeffs)) { trim(); }

void DiffOperator::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

DiffOperator DiffOperator::D(int k) {
  std::vector<RatFunc> c(k + 1);
  c[k] = RatFunc(1);
  return DiffOperator(std::move(c));
}

DiffOperator DiffOperator::theta() { return DiffOperator({RatFunc(), RatFunc::x()}); }

RatFunc DiffOperator::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return RatFunc();
  return c_[i];
}

const RatFunc& DiffOperator::lc() const {
  if (c_.empty()) throw MathError("leading coefficient of the zero operator");
  return c_.back();
}

DiffOperator DiffOperator::operator-() const {
  DiffOperator r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    if (!o.c_[i].is_zero()) c_[i] += o.c_[i];
  trim();
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    if (!o.c_[i].is_zero()) c_[i] -= o.c_[i];
  trim();
  return *this;
}

DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) {
  if (a.is_zero() || b.is_zero()) return DiffOperator();
  int na = a.order(), nb = b.order();
  // Derivatives of b's coefficients up to order na.
  std::vector<std::vector<RatFunc>> db(nb + 1);
  for (int j = 0; j <= nb; ++j) {
    db[j].push_back(b.c_[j]);
    for (int k = 1; k <= na; ++k) {
      if (db[j].back().is_zero()) break;
      db[j].push_back(db[j].back().derivative());
    }
  }
  std::vector<RatFunc> out(na + nb + 1);
  for (int i = 0; i <= na; ++i) {
    const RatFunc& ai = a.c_[i];
    if (ai.is_zero()) continue;
    for (int k = 0; k <= i; ++k) {
      Integer bin = binomial(i, k);
      for (int j = 0; j <= nb; ++j) {
        if (k >= static_cast<int>(db[j].size()) || db[j][k].is_zero()) continue;
        out[i - k + j] += (ai * db[j][k]).scaled(Rational(bin));
      }
    }
  }
  return DiffOperator(std::move(out));
}

DiffOperator DiffOperator::scaled(const Rational& c) const {
  if (sgn(c) == 0) return DiffOperator();
  DiffOperator r = *this;
  for (auto& v : r.c_) v = v.scaled(c);
  return r;
}

DiffOperator DiffOperator::left_mul(const RatFunc& f) const {
  if (f.is_zero()) return DiffOperator();
  DiffOperator r = *this;
  for (auto& v : r.c_)
    if (!v.is_zero()) v *= f;
  return r;
}

RatFunc DiffOperator::apply(const RatFunc& y) const {
  RatFunc acc, d = y;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i > 0) d = d.derivative();
    if (d.is_zero()) break;
    if (!c_[i].is_zero()) acc += c_[i] * d;
  }
  return acc;
}

std::vector<Poly> DiffOperator::cleared() const {
  std::vector<Poly> out;
  if (c_.empty()) return out;
  Poly L(1);
  for (const auto& c : c_)
    if (!c.is_zero()) L = lcm(L, c.den());
  Integer dl = 1, cont = 0;
  for (const auto& c : c_) {
    Poly p = c.is_zero() ? Poly() : c.num() * divmod(L, c.den()).first;
    for (const auto& v : p.coeffs()) mpz_lcm(dl.get_mpz_t(), dl.get_mpz_t(), v.get_den().get_mpz_t());
    out.push_back(std::move(p));
  }
  for (auto& p : out) {
    p = p.scaled(Rational(dl));
    for (const auto& v : p.coeffs()) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), v.get_num().get_mpz_t());
  }
  Rational s(1, cont);
  if (sgn(out.back().lc()) < 0) s = -s;
  for (auto& p : out) p = p.scaled(s);
  return out;
}

DiffOperator DiffOperator::cleared_op() const {
  std::vector<RatFunc> c;
  for (const auto& p : cleared()) c.emplace_back(p);
  return DiffOperator(std::move(c));
}

namespace {

bool single_term(const Poly& p) {
  int n = 0;
  for (const auto& v : p.coeffs())
    if (sgn(v) != 0) ++n;
  return n == 1;
}

std::string dx_power(int k) {
  if (k == 1) return "Dx";
  return "Dx^" + std::to_string(k);
}

// Join signed pieces "a", "-b" into "a - b".
void append_term(std::ostringstream& os, bool& first, const std::string& piece) {
  bool negative = !piece.empty() && piece[0] == '-';
  if (first) {
    os << piece;
  } else if (negative) {
    os << " - " << piece.substr(1);
  } else {
    os << " + " << piece;
  }
  first = false;
}

}  // namespace

std::string DiffOperator::str() const {
  if (c_.empty()) return "0";
  std::vector<Poly> p = cleared();
  std::ostringstream os;
  bool first = true;
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
    const Poly& c = p[k];
    if (c.is_zero()) continue;
    if (k == 0) {
      std::string s = c.str();
      // Split the constant polynomial into its own signed terms.
      std::size_t pos = 0;
      std::string cur;
      std::vector<std::string> pieces;
      while (pos < s.size()) {
        if (s.compare(pos, 3, " + ") == 0) {
          pieces.push_back(cur);
          cur.clear();
          pos += 3;
        } else if (s.compare(pos, 3, " - ") == 0) {
          pieces.push_back(cur);
          cur = "-";
          pos += 3;
        } else {
          cur += s[pos++];
        }
      }
      pieces.push_back(cur);
      for (const auto& piece : pieces) append_term(os, first, piece);
      continue;
    }
    std::string coef;
    if (single_term(c)) {
      std::string s = c.str();
      if (s == "1")
        coef = dx_power(k);
      else if (s == "-1")
        coef = "-" + dx_power(k);
      else
        coef = s + "*" + dx_power(k);
    } else {
      coef = "(" + c.str() + ")*" + dx_power(k);
    }
    append_term(os, first, coef);
  }
  return os.str();
}

std::string DiffOperator::exact_str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = order(); k >= 0; --k) {
    const RatFunc& c = c_[k];
    if (c.is_zero()) continue;
    std::string piece;
    Poly n = c.num();
    bool simple_num = single_term(n);
    if (c.is_poly()) {
      if (k == 0) {
        piece = simple_num ? n.str() : "(" + n.str() + ")";
      } else if (simple_num) {
        std::string s = n.str();
        piece = s == "1" ? dx_power(k) : s == "-1" ? "-" + dx_power(k) : s + "*" + dx_power(k);
      } else {
        piece = "(" + n.str() + ")*" + dx_power(k);
      }
    } else {
      bool neg = sgn(n.lc()) < 0;
      piece = std::string(neg ? "-" : "") + "(" + (neg ? -n : n).str() + ")/(" + c.den().str() + ")";
      if (k > 0) piece += "*" + dx_power(k);
    }
    append_term(os, first, piece);
  }
  return os.str();
}

DiffOperator formal_adjoint(const DiffOperator& L) {
  if (L.is_zero()) return L;
  int n = L.order();
  std::vector<RatFunc> out(n + 1);
  for (int i = 0; i <= n; ++i) {
    RatFunc d = L.coeff(i);
    if (d.is_zero()) continue;
    // (-D)^i a = (-1)^i sum_k C(i,k) a^{(k)} D^{i-k}
    for (int k = 0; k <= i; ++k) {
      if (k > 0) d = d.derivative();
      if (d.is_zero()) break;
      Rational s(binomial(i, k));
      if (i % 2) s = -s;
      out[i - k] += d.scaled(s);
    }
  }
  return DiffOperator(std::move(out));
}

DiffOperator adjoint(const DiffOperator& L) {
  DiffOperator a = formal_adjoint(L);
  return L.order() % 2 ? -a : a;
}

bool is_self_adjoint(const DiffOperator& L) { return adjoint(L) == L; }

Division right_divide(const DiffOperator& A, const DiffOperator& B) {
  if (B.is_zero()) throw MathError("right division by the zero operator");
  int nb = B.order();
  DiffOperator R = A;
  if (R.order() < nb) return {DiffOperator(), R};
  int kmax = R.order() - nb;
  // Derivatives of B's coefficients, reused by every D^k * B.
  std::vector<std::vector<RatFunc>> db(nb + 1);
  for (int j = 0; j <= nb; ++j) {
    db[j].push_back(B.coeff(j));
    for (int k = 1; k <= kmax; ++k) db[j].push_back(db[j].back().derivative());
  }
  std::vector<RatFunc> q(kmax + 1);
  RatFunc lbi = B.lc().inverse();
  while (!R.is_zero() && R.order() >= nb) {
    int k = R.order() - nb;
    RatFunc t = R.lc() * lbi;
    q[k] = t;
    // R -= t * D^k * B
    std::vector<RatFunc> sub(R.order() + 1);
    for (int s = 0; s <= k; ++s) {
      Rational bin(binomial(k, s));
      for (int j = 0; j <= nb; ++j) {
        if (db[j][s].is_zero()) continue;
        sub[k - s + j] += (t * db[j][s]).scaled(bin);
      }
    }
    std::vector<RatFunc> rc = R.coeffs();
    rc.back() = RatFunc();  // cancels exactly
    for (std::size_t i = 0; i + 1 < sub.size(); ++i)
      if (!sub[i].is_zero()) rc[i] -= sub[i];
    R = DiffOperator(std::move(rc));
  }
  return {DiffOperator(std::move(q)), R};
}

Division left_divide(const DiffOperator& A, const DiffOperator& B) {
  if (B.is_zero()) throw MathError("left division by the zero operator");
  Division d = right_divide(formal_adjoint(A), formal_adjoint(B));
  return {formal_adjoint(d.q), formal_adjoint(d.r)};
}

RatFunc wronskian_logderiv(const DiffOperator& L) {
  if (L.is_zero()) throw MathError("Wronskian of the zero operator");
  if (L.order() < 1) throw MathError("Wronskian needs order at least 1");
  return -(L.coeff(L.order() - 1) / L.lc());
}

UnivariateSeries apply_to_series(const DiffOperator& L, const UnivariateSeries& s, std::size_t n) {
  UnivariateSeries out;
  out.c.assign(n, 0);
  if (L.is_zero()) return out;
  int ord = L.order();
  if (s.order() < n + ord)
    throw MathError("apply_to_series: need " + std::to_string(n + ord) + " series terms, have " +
                    std::to_string(s.order()));
  for (int i = 0; i <= ord; ++i) {
    const RatFunc& a = L.coeffs()[i];
    if (a.is_zero()) continue;
    if (sgn(a.den().coeff(0)) == 0)
      throw MathError("apply_to_series: coefficient of Dx^" + std::to_string(i) + " has a pole at 0");
    UnivariateSeries as = series_of(a.num(), a.den(), n);
    std::vector<Rational> t(n);
    for (std::size_t k = 0; k < n; ++k) {
      Integer f = 1;
      for (int j = 1; j <= i; ++j) f *= static_cast<long>(k + j);
      t[k] = s.c[k + i] * f;
    }
    for (std::size_t u = 0; u < n; ++u) {
      if (sgn(as.c[u]) == 0) continue;
      for (std::size_t v = 0; u + v < n; ++v) out.c[u + v] += as.c[u] * t[v];
    }
  }
  return out;
}

namespace {

// S2[j][k]: Stirling numbers of the second kind; s1[k][j]: signed first kind.
std::vector<std::vector<Integer>> stirling2(int n) {
  std::vector<std::vector<Integer>> S(n + 1, std::vector<Integer>(n + 1, 0));
  S[0][0] = 1;
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= j; ++k) S[j][k] = S[j - 1][k - 1] + S[j - 1][k] * k;
  return S;
}

std::vector<std::vector<Integer>> stirling1(int n) {
  std::vector<std::vector<Integer>> s(n + 1, std::vector<Integer>(n + 1, 0));
  s[0][0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= k; ++j) s[k][j] = s[k - 1][j - 1] - s[k - 1][j] * (k - 1);
  return s;
}

}  // namespace

DiffOperator from_theta(const ThetaExpr& e) {
  int maxj = 0;
  for (const auto& [key, c] : e.terms) maxj = std::max(maxj, key.second);
  auto S = stirling2(maxj);
  std::vector<RatFunc> out(maxj + 1);
  RatFunc x = RatFunc::x();
  for (const auto& [key, c] : e.terms) {
    auto [i, j] = key;
    if (sgn(c) == 0) continue;
    for (int k = 0; k <= j; ++k) {
      if (sgn(S[j][k]) == 0) continue;
      out[k] += x.pow(i + k).scaled(c * S[j][k]);
    }
  }
  return DiffOperator(std::move(out));
}

ThetaExpr to_theta(const DiffOperator& L) {
  ThetaExpr e;
  if (L.is_zero()) return e;
  auto s = stirling1(L.order());
  for (int k = 0; k <= L.order(); ++k) {
    const RatFunc& a = L.coeffs()[k];
    if (a.is_zero()) continue;
    Poly den = a.den();
    int m = den.degree();
    if (den != Poly::monomial(m)) throw MathError("to_theta: coefficient is not a Laurent polynomial in x");
    Poly num = a.num();
    for (int t = 0; t <= num.degree(); ++t) {
      Rational c = num.coeff(t);
      if (sgn(c) == 0) continue;
      int xp = t - m - k;
      for (int j = 0; j <= k; ++j) {
        if (sgn(s[k][j]) == 0) continue;
        e.terms[{xp, j}] += c * s[k][j];
      }
    }
  }
  for (auto it = e.terms.begin(); it != e.terms.end();) {
    if (sgn(it->second) == 0)
      it = e.terms.erase(it);
    else
      ++it;
  }
  return e;
}

std::string ThetaExpr::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    auto [i, j] = it->first;
    Rational c = it->second;
    std::string mono;
    if (i != 0) mono += i == 1 ? "x" : "x^" + (i < 0 ? "(" + std::to_string(i) + ")" : std::to_string(i));
    if (j != 0) {
      if (!mono.empty()) mono += "*";
      mono += j == 1 ? "theta" : "theta^" + std::to_string(j);
    }
    std::string piece;
    Rational a = abs(c);
    if (mono.empty())
      piece = a.get_str();
    else if (a == 1)
      piece = mono;
    else
      piece = a.get_str() + "*" + mono;
    if (sgn(c) < 0) piece = "-" + piece;
    append_term(os, first, piece);
  }
  return os.str();
}

std::vector<RatFunc> theta_coefficients(const DiffOperator& L) {
  if (L.is_zero()) return {};
  auto s = stirling1(L.order());
  std::vector<RatFunc> b(L.order() + 1);
  RatFunc xinv = RatFunc::x().inverse();
  for (int k = 0; k <= L.order(); ++k) {
    const RatFunc& a = L.coeffs()[k];
    if (a.is_zero()) continue;
    RatFunc ak = a * xinv.pow(k);
    for (int j = 0; j <= k; ++j)
      if (sgn(s[k][j]) != 0) b[j] += ak.scaled(Rational(s[k][j]));
  }
  return b;
}

DiffOperator from_theta_coefficients(const std::vector<RatFunc>& b) {
  DiffOperator r, th = DiffOperator::theta(), pw(1);
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!b[j].is_zero()) r += pw.left_mul(b[j]);
    pw = th * pw;
  }
  return r;
}

}  // namespace adjtower

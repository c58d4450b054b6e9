#include "adjtower/diagonal.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "adjtower/linalg.hpp"

namespace adjtower {

Integer TriPoly::coeff(int i, int j, int k) const {
  auto it = terms.find({i, j, k});
  return it == terms.end() ? Integer(0) : it->second;
}

std::string TriPoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  static const char* names[3] = {"x", "y", "z"};
  for (const auto& [e, c] : terms) {
    Integer a = abs(c);
    if (first)
      os << (sgn(c) < 0 ? "-" : "");
    else
      os << (sgn(c) < 0 ? " - " : " + ");
    first = false;
    bool any = false;
    std::ostringstream mono;
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      if (any) mono << "*";
      mono << names[v];
      if (e[v] > 1) mono << "^" << e[v];
      any = true;
    }
    if (!any)
      os << a.get_str();
    else if (a == 1)
      os << mono.str();
    else
      os << a.get_str() << "*" << mono.str();
  }
  return os.str();
}

TriPoly operator+(const TriPoly& a, const TriPoly& b) {
  TriPoly r = a;
  for (const auto& [e, c] : b.terms) {
    Integer& t = r.terms[e];
    t += c;
    if (sgn(t) == 0) r.terms.erase(e);
  }
  return r;
}

TriPoly operator-(const TriPoly& a, const TriPoly& b) {
  TriPoly nb;
  for (const auto& [e, c] : b.terms) nb.terms[e] = -c;
  return a + nb;
}

TriPoly operator*(const TriPoly& a, const TriPoly& b) {
  TriPoly r;
  for (const auto& [e, c] : a.terms)
    for (const auto& [f, d] : b.terms) {
      std::array<int, 3> g{e[0] + f[0], e[1] + f[1], e[2] + f[2]};
      Integer& t = r.terms[g];
      t += c * d;
      if (sgn(t) == 0) r.terms.erase(g);
    }
  return r;
}

std::string TrivariateRational::str() const { return "(" + num.str() + ")/(" + den.str() + ")"; }

namespace {

TriPoly constant(const Integer& c) {
  TriPoly p;
  if (sgn(c) != 0) p.terms[{0, 0, 0}] = c;
  return p;
}

class TriParser {
 public:
  explicit TriParser(const std::string& s) : s_(s) {}

  TrivariateRational parse() {
    TrivariateRational v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    if (v.den.is_zero()) fail("zero denominator");
    return v;
  }

 private:
  using Frac = TrivariateRational;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("parse error at position " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static Frac add(const Frac& a, const Frac& b, bool minus) {
    if (a.den.terms == b.den.terms) return {minus ? a.num - b.num : a.num + b.num, a.den};
    TriPoly n1 = a.num * b.den, n2 = b.num * a.den;
    return {minus ? n1 - n2 : n1 + n2, a.den * b.den};
  }

  Frac expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Frac v = term();
    if (neg) v.num = constant(0) - v.num;
    while (true) {
      if (eat('+'))
        v = add(v, term(), false);
      else if (eat('-'))
        v = add(v, term(), true);
      else
        return v;
    }
  }

  Frac term() {
    Frac v = power();
    while (true) {
      skip();
      if (pos_ + 1 < s_.size() && s_[pos_] == '*' && s_[pos_ + 1] == '*') return v;
      if (eat('*')) {
        Frac w = power();
        v = {v.num * w.num, v.den * w.den};
      } else if (eat('/')) {
        Frac w = power();
        if (w.num.is_zero()) fail("division by zero");
        v = {v.num * w.den, v.den * w.num};
      } else {
        return v;
      }
    }
  }

  Frac power() {
    Frac b = atom();
    skip();
    bool pw = false;
    if (eat('^'))
      pw = true;
    else if (pos_ + 1 < s_.size() && s_[pos_] == '*' && s_[pos_ + 1] == '*') {
      pos_ += 2;
      pw = true;
    }
    if (!pw) return b;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    int e = std::stoi(s_.substr(start, pos_ - start));
    Frac r{constant(1), constant(1)};
    for (int i = 0; i < e; ++i) r = {r.num * b.num, r.den * b.den};
    return r;
  }

  Frac atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Frac v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return {constant(Integer(s_.substr(start, pos_ - start))), constant(1)};
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      TriPoly p;
      std::array<int, 3> e{0, 0, 0};
      e[c - 'x'] = 1;
      p.terms[e] = 1;
      return {p, constant(1)};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

struct Term {
  int u, v, w;
  Integer c;
};

// a(i,j,k) for i,j,k < n from den * a = num, streamed in x-slices. Only the
// diagonal entries are kept. T is mpz_class when den(0) = +-1, else mpq_class.
template <class T>
std::vector<T> expand_diagonal(const TrivariateRational& R, std::size_t n) {
  const Integer d0 = R.den.coeff(0, 0, 0);
  std::vector<Term> dt;
  int dx = 0;
  for (const auto& [e, c] : R.den.terms) {
    if (e == std::array<int, 3>{0, 0, 0}) continue;
    dt.push_back({e[0], e[1], e[2], c});
    dx = std::max(dx, e[0]);
  }
  const std::size_t nn = n * n;
  std::vector<std::vector<T>> slices(dx + 1, std::vector<T>(nn));
  std::vector<T> diag(n);
  T acc;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<T>& cur = slices[i % (dx + 1)];
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        acc = R.num.coeff(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k));
        for (const auto& t : dt) {
          if (static_cast<std::size_t>(t.u) > i || static_cast<std::size_t>(t.v) > j ||
              static_cast<std::size_t>(t.w) > k)
            continue;
          const T& prev = slices[(i - t.u) % (dx + 1)][(j - t.v) * n + (k - t.w)];
          acc -= t.c * prev;
        }
        if (d0 == 1)
          cur[j * n + k] = acc;
        else if (d0 == -1)
          cur[j * n + k] = -acc;
        else
          cur[j * n + k] = acc / T(d0);
      }
    diag[i] = cur[i * n + i];
  }
  return diag;
}

Rational to_rational(const mpz_class& z) { return Rational(z); }
Rational to_rational(const mpq_class& q) { return q; }

}  // namespace

TrivariateRational parse_trivariate(const std::string& text) { return TriParser(text).parse(); }

UnivariateSeries diag_series_expand(const TrivariateRational& R, std::size_t n) {
  Integer d0 = R.den.coeff(0, 0, 0);
  if (sgn(d0) == 0) throw MathError("diag_series_expand: denominator vanishes at the origin");
  UnivariateSeries s;
  if (d0 == 1 || d0 == -1) {
    for (auto& v : expand_diagonal<mpz_class>(R, n)) s.c.push_back(to_rational(v));
  } else {
    for (auto& v : expand_diagonal<mpq_class>(R, n)) s.c.push_back(to_rational(v));
  }
  return s;
}

UnivariateSeries diag_series_multinomial(const TrivariateRational& R, std::size_t n) {
  // Template 1 / (1 - P) with P = c1 x + c2 y + c3 z + c4 x y + c5 y z^2 + c6 x^2 z^2.
  static const std::array<std::array<int, 3>, 6> mono{
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 2}, {2, 0, 2}}};
  if (R.num.terms.size() != 1 || R.num.coeff(0, 0, 0) == 0)
    throw MathError("diag_series_multinomial: numerator must be a constant");
  Integer k0 = R.den.coeff(0, 0, 0);
  if (sgn(k0) == 0) throw MathError("diag_series_multinomial: denominator vanishes at the origin");
  std::array<Rational, 6> c;
  std::size_t matched = 1;
  for (int t = 0; t < 6; ++t) {
    Integer v = R.den.coeff(mono[t][0], mono[t][1], mono[t][2]);
    if (sgn(v) != 0) ++matched;
    c[t] = Rational(-v, k0);
    c[t].canonicalize();
  }
  if (matched != R.den.terms.size())
    throw MathError("diag_series_multinomial: denominator is not of the form 1 - P with P on x, y, z, x*y, y*z^2, x^2*z^2");
  Rational scale = Rational(R.num.coeff(0, 0, 0), k0);
  scale.canonicalize();

  // factorials up to the largest multinomial size 3(n-1)
  std::size_t top = 3 * (n > 0 ? n - 1 : 0);
  std::vector<Integer> fact(top + 1, 1);
  for (std::size_t i = 1; i <= top; ++i) fact[i] = fact[i - 1] * static_cast<unsigned long>(i);

  UnivariateSeries s;
  s.c.assign(n, 0);
  for (long M = 0; M < static_cast<long>(n); ++M) {
    Rational total = 0;
    // Exponents of the six monomials with N = m1 + ... + m6:
    //   m2 = 3 m1 + 4 M - 5 m5 - 2 N     m3 = 2 N - 2 m1 + 2 m5 - 3 M
    //   m4 = 2 N - 3 m1 - 3 M + 4 m5     m6 = 2 M - N + m1 - 2 m5
    for (long m1 = 0; m1 <= M; ++m1)
      for (long m5 = 0; m5 <= M; ++m5)
        for (long N = 0; N <= 3 * M; ++N) {
          std::array<long, 6> m{m1, 3 * m1 + 4 * M - 5 * m5 - 2 * N, 2 * N - 2 * m1 + 2 * m5 - 3 * M,
                                2 * N - 3 * m1 - 3 * M + 4 * m5, m5, 2 * M - N + m1 - 2 * m5};
          bool ok = true;
          for (long v : m) ok = ok && v >= 0;
          if (!ok) continue;
          Rational term = fact[N];
          for (int t = 0; t < 6 && sgn(term) != 0; ++t) {
            if (m[t] == 0) continue;
            Rational p;
            mpz_pow_ui(p.get_num_mpz_t(), c[t].get_num_mpz_t(), static_cast<unsigned long>(m[t]));
            mpz_pow_ui(p.get_den_mpz_t(), c[t].get_den_mpz_t(), static_cast<unsigned long>(m[t]));
            term *= p / fact[m[t]];
          }
          total += term;
        }
    s.c[M] = total * scale;
  }
  return s;
}

std::size_t guess_terms_required(int order, int degree, int margin) {
  return static_cast<std::size_t>((order + 1) * (degree + 1) + margin);
}

std::optional<DiffOperator> guess_operator(const UnivariateSeries& s, int order, int degree, int margin) {
  if (order < 0 || degree < 0 || margin < 0) throw MathError("guess_operator: order, degree and margin must be nonnegative");
  std::size_t need = guess_terms_required(order, degree, margin);
  if (s.order() < need)
    throw MathError("guess_operator: need at least " + std::to_string(need) + " series terms, have " +
                    std::to_string(s.order()));
  // Coefficient of x^k in (x^j theta^i) s is (k-j)^i s_{k-j}; every
  // equation k < n is exact.
  std::size_t solve = s.order() - margin;
  std::size_t unknowns = static_cast<std::size_t>((order + 1) * (degree + 1));
  QMatrix M(solve, unknowns);
  for (std::size_t k = 0; k < solve; ++k)
    for (int j = 0; j <= degree && static_cast<std::size_t>(j) <= k; ++j) {
      std::size_t m = k - j;
      if (sgn(s.c[m]) == 0) continue;
      Rational v = s.c[m];
      for (int i = 0; i <= order; ++i) {
        M(k, i * (degree + 1) + j) = v;
        v *= static_cast<unsigned long>(m);
      }
    }
  for (const auto& v : nullspace(M)) {
    ThetaExpr e;
    for (int i = 0; i <= order; ++i)
      for (int j = 0; j <= degree; ++j)
        if (sgn(v[i * (degree + 1) + j]) != 0) e.terms[{j, i}] = v[i * (degree + 1) + j];
    if (e.terms.empty()) continue;
    // drop the common left factor x^t
    auto P = from_theta(e).cleared();
    std::size_t t = SIZE_MAX;
    for (const auto& p : P) {
      if (p.is_zero()) continue;
      std::size_t z = 0;
      while (sgn(p.coeffs()[z]) == 0) ++z;
      t = std::min(t, z);
    }
    std::vector<RatFunc> c;
    for (const auto& p : P) c.emplace_back(Poly(std::vector<Rational>(p.coeffs().begin() + std::min(t, p.coeffs().size()), p.coeffs().end())));
    DiffOperator Lp = DiffOperator(c).cleared_op();
    auto r = apply_to_series(Lp, s, s.order() - Lp.order());
    if (r.is_zero()) return Lp;
  }
  return std::nullopt;
}

}  // namespace adjtower

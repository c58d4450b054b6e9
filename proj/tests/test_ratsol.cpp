#include <random>

#include "adjtower/linalg.hpp"
#include "adjtower/parser.hpp"
#include "adjtower/ratsol.hpp"
#include "adjtower/selfadjoint.hpp"
#include "doctest.h"

using namespace adjtower;

namespace {
DiffOperator op(const std::string& s) { return parse_operator(s); }

bool proportional(const RatFunc& a, const RatFunc& b) { return !a.is_zero() && (a / b).is_constant(); }

bool in_span(const RatFunc& f, const std::vector<RatFunc>& basis) {
  Poly den = f.den();
  for (auto& y : basis) den = lcm(den, y.den());
  std::vector<Poly> cols;
  for (auto& y : basis) cols.push_back(divmod(y.num() * den, y.den()).first);
  cols.push_back(divmod(f.num() * den, f.den()).first);
  int rows = 0;
  for (auto& c : cols) rows = std::max(rows, c.degree() + 1);
  QMatrix M(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i <= cols[j].degree(); ++i) M(i, j) = cols[j].coeff(i);
  for (auto& v : nullspace(M))
    if (sgn(v.back()) != 0) return true;
  return false;
}
}  // namespace

TEST_CASE("integer roots") {
  Poly p = Poly({-3, 1}) * Poly({5, 1}) * Poly({1, 0, 1}) * Poly({-1, 2});
  CHECK(integer_roots(p) == std::vector<Integer>{-5, 3});
  CHECK(integer_roots(pow(Poly({7, 1}), 3)) == std::vector<Integer>{-7});
  CHECK(integer_roots(Poly({1, 0, 1})).empty());
  Integer big("123456789012345678901");
  CHECK(integer_roots(Poly({Rational(-big), 1}) * Poly({Rational(big + 1), 1})) == std::vector<Integer>{-big - 1, big});
}

TEST_CASE("indicial data") {
  auto e = indicial_at(op("x*Dx - 2"), Rational(0));
  CHECK(e.integer_roots == std::vector<Integer>{2});
  e = indicial_at(op("(1-x)*Dx - 1"), Rational(1));
  CHECK(e.integer_roots == std::vector<Integer>{-1});
  e = indicial_at(op("Dx^3 + x"), Rational(4));
  CHECK(e.integer_roots == std::vector<Integer>{0, 1, 2});
  // theta form: the x^0 part theta^7 gives seven zero exponents at 0
  DiffOperator E2 = op("theta^7 - 128*x*(8*theta^4+16*theta^3+20*theta^2+12*theta+3)*(2*theta+1)^3 + 1048576*x^2*(2*theta+1)^2*(2*theta+3)^2*(theta+1)^3");
  e = indicial_at(E2, Rational(0));
  CHECK(e.indicial.degree() == 7);
  CHECK(e.indicial == Poly::monomial(7).scaled(e.indicial.lc()));
  CHECK(e.integer_roots == std::vector<Integer>{0});
  e = indicial_at(op("x*Dx - 2"), std::nullopt);
  CHECK(e.integer_roots == std::vector<Integer>{-2});
}

TEST_CASE("rational solutions: small examples") {
  auto r = rational_solutions(op("Dx - 1/x"));
  REQUIRE(r.basis.size() == 1);
  CHECK(r.basis[0] == RatFunc::x());
  CHECK(r.complete);
  r = rational_solutions(op("x*Dx - 2"));
  REQUIRE(r.basis.size() == 1);
  CHECK(r.basis[0] == parse_ratfunc("x^2"));
  r = rational_solutions(op("Dx^2"));
  CHECK(r.basis.size() == 2);
  CHECK(rational_solutions(op("Dx - 1")).basis.empty());
  CHECK(rational_solutions(op("x*Dx - 1/2")).basis.empty());
  // bounded search
  RatSolBounds b;
  b.num_degree = 3;
  b.denominator = Poly(1);
  r = rational_solutions(op("Dx^2"), b);
  CHECK(r.basis.size() == 2);
  CHECK_FALSE(r.complete);
}

TEST_CASE("rational solutions: planted solutions are found") {
  std::mt19937_64 g(31);
  for (int t = 0; t < 30; ++t) {
    // factors with irrational roots included
    Poly num = random_poly(g, 1 + static_cast<int>(g() % 3));
    Poly den = random_poly(g, 1 + static_cast<int>(g() % 3)) * random_poly(g, 1);
    if (gcd(num, den).degree() > 0) continue;
    RatFunc f(num, den);
    DiffOperator first({-(f.derivative() / f), RatFunc(1)});
    auto r = rational_solutions(first);
    REQUIRE(r.basis.size() == 1);
    CHECK(proportional(r.basis[0], f));
    // with a random left factor
    DiffOperator L = random_self_adjoint(1 + static_cast<int>(g() % 2), 2, g()) * first;
    r = rational_solutions(L);
    for (auto& y : r.basis) CHECK(L.apply(y).is_zero());
    CHECK(in_span(f, r.basis));
  }
}

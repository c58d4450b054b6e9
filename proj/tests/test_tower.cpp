#include <algorithm>
#include <random>
#include <set>

#include "adjtower/parser.hpp"
#include "adjtower/selfadjoint.hpp"
#include "adjtower/tower.hpp"
#include "doctest.h"

using namespace adjtower;

namespace {

DiffOperator op(const std::string& s) { return parse_operator(s); }

RatFunc random_r(std::mt19937_64& g) {
  Poly n = random_poly(g, 1), d = random_poly(g, 1);
  if (gcd(n, d).degree() > 0) return RatFunc(n);
  return RatFunc(n, d);
}

Decomposition random_dec(std::mt19937_64& g, const std::vector<int>& orders, bool with_r = true) {
  Decomposition d;
  for (int q : orders) d.units.push_back(random_self_adjoint(q, 1 + static_cast<int>(g() % 2), g()));
  d.r = with_r ? random_r(g) : RatFunc(1);
  return d;
}

}  // namespace

TEST_CASE("build small towers") {
  Decomposition d{{op("Dx"), op("Dx")}, RatFunc(1)};
  CHECK(build_operator(d) == op("Dx^2 + 1"));
  d.units.push_back(op("Dx"));
  CHECK(build_operator(d) == op("Dx^3 + 2*Dx"));
  auto t = build(d);
  CHECK(t.L.size() == 4);
  CHECK(t.L[0] == op("1"));
  CHECK(t.L[2] == op("Dx^2 + 1"));
  CHECK_FALSE(verify_intertwining_chain(t).has_value());
}

TEST_CASE("expansion terms follow the Fibonacci numbers") {
  long want[] = {1, 1, 2, 3, 5, 8, 13, 21};
  for (int N = 0; N <= 7; ++N) {
    CHECK(static_cast<long>(expand_terms(N).size()) == want[N]);
    CHECK(fibonacci_count(N) == want[N]);
  }
  auto t4 = expand_terms(4);
  std::set<std::vector<int>> got(t4.begin(), t4.end());
  std::set<std::vector<int>> expect{{4, 3, 2, 1}, {4, 1}, {2, 1}, {4, 3}, {}};
  CHECK(got == expect);
  CHECK(expand_terms(1) == std::vector<std::vector<int>>{{1}});

  std::mt19937_64 g(3);
  for (int N = 0; N <= 7; ++N) {
    auto d = random_dec(g, std::vector<int>(N, 1));
    CHECK(expand_operator(d) == build_operator(d));
  }
  auto d = random_dec(g, {2, 2, 2});
  const auto &P = d.units[0], &N = d.units[1], &M = d.units[2];
  CHECK(build_operator(d) == (M * N * P + M + P) * DiffOperator(d.r));
}

TEST_CASE("mixed parity and non-self-adjoint units are rejected") {
  std::mt19937_64 g(4);
  auto d = random_dec(g, {1, 2});
  CHECK_THROWS_AS(build(d), MathError);
  Decomposition bad{{op("x*Dx")}, RatFunc(1)};
  CHECK_THROWS_AS(build(bad), MathError);
}

TEST_CASE("extract inverts build") {
  Decomposition d{{op("Dx"), op("Dx")}, RatFunc(1)};
  auto e = extract(op("Dx^2 + 1"), op("Dx"));
  CHECK(e.dec.units == d.units);
  CHECK(e.dec.r == RatFunc(1));

  std::mt19937_64 g(77);
  for (int t = 0; t < 100; ++t) {
    int N = 1 + static_cast<int>(g() % 5);
    int q = 1 + static_cast<int>(g() % 2);
    auto dec = random_dec(g, std::vector<int>(N, q));
    auto tr = build(dec);
    auto ex = extract(tr.L[N], tr.L[N - 1]);
    CHECK(ex.dec.units == dec.units);
    CHECK(ex.dec.r == dec.r);
    CHECK(ex.trace.L == tr.L);
  }
  for (auto orders : std::vector<std::vector<int>>{{1, 3, 1}, {3, 1, 3}, {2, 4}, {4, 2, 4}}) {
    auto dec = random_dec(g, orders);
    auto tr = build(dec);
    auto ex = extract(tr.L.back(), tr.L[tr.L.size() - 2]);
    CHECK(ex.dec.units == dec.units);
    CHECK(ex.dec.r == dec.r);
    for (auto& s : ex.trace.steps) CHECK(s.quotient_self_adjoint);
  }
}

TEST_CASE("extract with a scaled intertwiner") {
  std::mt19937_64 g(8);
  auto dec = random_dec(g, {1, 1, 1, 1});
  auto tr = build(dec);
  Rational lam(3, 7);
  auto ex = extract(tr.L[4], tr.L[3].scaled(lam));
  CHECK(build_operator(ex.dec) == tr.L[4]);
  CHECK(ex.dec.units[3] == dec.units[3].scaled(1 / lam));
  CHECK(ex.dec.units[2] == dec.units[2].scaled(lam));
}

TEST_CASE("extract errors") {
  CHECK_THROWS_AS(extract(op("Dx^2 + 1"), op("x*Dx")), MathError);
  // D^2 = Dx * Dx + 0: the remainder vanishes before order 0
  CHECK_THROWS_AS(extract(op("Dx^3"), op("Dx")), ReducibleTower);
}

TEST_CASE("intertwining chain and its negative control") {
  std::mt19937_64 g(19);
  auto tr = build(random_dec(g, {1, 1, 1}));
  CHECK_FALSE(verify_intertwining_chain(tr).has_value());
  auto c = tr.L[2].coeffs();
  c[0] += RatFunc(1);
  tr.L[2] = DiffOperator(c);
  auto bad = verify_intertwining_chain(tr);
  REQUIRE(bad.has_value());
  CHECK(*bad == 2);
}

TEST_CASE("adjoint decomposition") {
  Decomposition d{{op("Dx"), op("Dx")}, RatFunc(1)};
  CHECK(build_operator(adjoint_decomposition(d)) == op("Dx^2 + 1"));
  std::mt19937_64 g(21);
  for (auto orders : std::vector<std::vector<int>>{{1, 1, 1}, {2, 2, 2, 2}, {1, 3}, {2, 2}}) {
    auto dec = random_dec(g, orders);
    auto ad = adjoint_decomposition(dec);
    CHECK(build_operator(ad) == adjoint(build_operator(dec)));
    CHECK(build_operator(adjoint_decomposition(ad)) == build_operator(dec));
    if (orders.size() % 2 == 0) CHECK(ad.r == dec.r);
    else CHECK(ad.r == dec.r.inverse());
    CHECK(dual_tower_operator(dec, 0) == adjoint(build_operator(dec)));
  }
}

TEST_CASE("inversion relations") {
  Decomposition d{{op("Dx"), op("Dx")}, RatFunc(1)};
  CHECK(inversion_check(d).c_ml == -1);
  std::mt19937_64 g(29);
  auto r3 = inversion_check(random_dec(g, {1, 1, 1}));
  CHECK(r3.c_ml == 1);
  CHECK(r3.c_lm == 1);
  auto r4 = inversion_check(random_dec(g, {2, 2, 2, 2}));
  CHECK(r4.c_ml == -1);
  CHECK(r4.c_lm == -1);
  for (int N = 2; N <= 7; ++N) {
    auto r = inversion_check(random_dec(g, std::vector<int>(N, 1)));
    CHECK(r.c_ml == (N % 2 == 0 ? -1 : 1));
  }
}

TEST_CASE("family classification") {
  std::mt19937_64 g(5);
  auto f = classify_family(random_dec(g, {1, 1, 1, 1, 1}));
  CHECK(f.orthogonal);
  CHECK(f.dimension == 5);
  CHECK(f.generic);
  f = classify_family(random_dec(g, {2, 2, 2}));
  CHECK_FALSE(f.orthogonal);
  CHECK(f.dimension == 6);
  CHECK(f.generic);
  f = classify_family(random_dec(g, {1, 3, 1}));
  CHECK(f.orthogonal);
  CHECK(f.dimension == 5);
  CHECK_FALSE(f.generic);
}

TEST_CASE("bracket form") {
  CHECK(build_bracket_form(op("Dx"), op("Dx"), RatFunc(1), 0) == op("Dx^2"));
  CHECK(build_bracket_form(op("Dx"), op("Dx"), RatFunc::x(), 1) == op("Dx*x*Dx + 1/x"));
  std::mt19937_64 g(6);
  for (int t = 0; t < 5; ++t) {
    auto A = random_self_adjoint(2, 2, g()), B = random_self_adjoint(2, 1, g());
    CHECK_NOTHROW(build_bracket_form(A, B, random_r(g), Rational(static_cast<long>(g() % 7))));
  }
  CHECK_THROWS_AS(build_bracket_form(op("x*Dx"), op("Dx"), RatFunc(1), 0), MathError);
}

TEST_CASE("operator identity suite") {
  std::mt19937_64 g(41);
  for (int t = 0; t < 10; ++t) {
    int base = 1 + static_cast<int>(g() % 2);
    std::vector<DiffOperator> U;
    for (int i = 0; i < 4; ++i) U.push_back(random_self_adjoint(base + 2 * static_cast<int>(g() % 2 == 0 && t % 3 == 0), 1, g()));
    auto rep = identity_suite(U[0], U[1], U[2], U[3], random_r(g));
    CHECK(rep.holds.size() == 10);
    for (auto& [name, ok] : rep.holds) CHECK_MESSAGE(ok, name);
  }
}

TEST_CASE("decomposition document round trip") {
  std::mt19937_64 g(12);
  auto dec = random_dec(g, {2, 2, 2});
  std::string doc = write_document(dec);
  CHECK(doc.find("family: symplectic 6") != std::string::npos);
  CHECK(doc.find("fibonacci_terms: 3") != std::string::npos);
  auto back = read_document(doc);
  CHECK(back.units == dec.units);
  CHECK(back.r == dec.r);
  CHECK_THROWS_AS(read_document("units: 1\n"), ParseError);
}

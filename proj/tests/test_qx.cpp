#include <random>

#include "adjtower/linalg.hpp"
#include "adjtower/ratfunc.hpp"
#include "doctest.h"

using namespace adjtower;

namespace {

RatFunc X() { return RatFunc::x(); }

Poly random_poly(std::mt19937_64& g, int deg) {
  std::vector<Rational> c(deg + 1);
  for (auto& v : c) v = static_cast<long>(g() % 19) - 9;
  if (sgn(c.back()) == 0) c.back() = 1;
  return Poly(c);
}

RatFunc random_rf(std::mt19937_64& g) {
  Poly n = random_poly(g, static_cast<int>(g() % 4)), d = random_poly(g, static_cast<int>(g() % 3));
  return RatFunc(n, d);
}

}  // namespace

TEST_CASE("rational function normal forms") {
  RatFunc x = X();
  CHECK(x / (x + 1) + RatFunc(1) / (x + 1) == RatFunc(1));
  CHECK(RatFunc(Poly({-1, 0, 1}), Poly({-1, 1})) == x + 1);
  CHECK((x.scaled(2) / (x * x)) * x.scaled(Rational(1, 2)) == RatFunc(1));
  CHECK((RatFunc(1) / x).derivative() == -(RatFunc(1) / (x * x)));
  CHECK((x * x * x).derivative() == (x * x).scaled(3));
  RatFunc one_minus = RatFunc(1) - x;
  CHECK((x / one_minus).derivative() == RatFunc(1) / (one_minus * one_minus));
  CHECK_THROWS(x / RatFunc(0));
  CHECK(RatFunc(Poly({-1, 0, 1}), Poly({-1, 1})).den() == Poly(1));
}

TEST_CASE("field axioms and derivation on random rational functions") {
  std::mt19937_64 g(11);
  for (int t = 0; t < 200; ++t) {
    RatFunc a = random_rf(g), b = random_rf(g), c = random_rf(g);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("polynomial gcd and squarefree parts") {
  Poly x = Poly::x();
  Poly a = (x - 1) * (x - 1) * (x + 2) * (x * x + 3);
  Poly b = (x - 1) * (x * x + 3) * (x - 5);
  CHECK(gcd(a, b) == (x - 1) * (x * x + 3));
  auto sf = squarefree(a);
  REQUIRE(sf.size() == 2);
  CHECK(sf[0].first == (x + 2) * (x * x + 3));
  CHECK(sf[1].first == x - 1);
  CHECK(sf[1].second == 2);
  CHECK(resultant(x * x - 2, x - 3) == 7);
}

TEST_CASE("big polynomial products agree with schoolbook") {
  std::mt19937_64 g(5);
  zpoly::ZPoly a(40), b(33);
  for (auto& c : a) c = Integer(static_cast<long>(g() % 2001) - 1000) * Integer("123456789012345678901234567890");
  for (auto& c : b) c = static_cast<long>(g() % 2001) - 1000;
  zpoly::ZPoly prod = zpoly::mul(a, b);
  zpoly::ZPoly ref(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) ref[i + j] += a[i] * b[j];
  zpoly::trim(ref);
  CHECK(prod == ref);
  CHECK(zpoly::divexact(prod, b) == a);
}

TEST_CASE("nullspace over Q(x)") {
  RatFunc x = X();
  QxMatrix I = identity_qx(2);
  CHECK(nullspace(I).empty());
  QxMatrix M(1, 2);
  M(0, 0) = x;
  M(0, 1) = x;
  auto k = nullspace(M);
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == RatFunc(-1));
  CHECK(k[0][1] == RatFunc(1));

  std::mt19937_64 g(3);
  for (int t = 0; t < 5; ++t) {
    QxMatrix R(5, 7);
    for (auto& e : R.a) e = random_rf(g);
    auto ker = nullspace(R);
    CHECK(ker.size() == 2);
    for (const auto& v : ker)
      for (std::size_t i = 0; i < R.rows; ++i) {
        RatFunc s;
        for (std::size_t j = 0; j < R.cols; ++j) s += R(i, j) * v[j];
        CHECK(s.is_zero());
      }
    auto ref = nullspace_naive(R);
    CHECK(ref == ker);
  }
}

TEST_CASE("nullspace with a degenerate rank") {
  RatFunc x = X();
  std::mt19937_64 g(9);
  QxMatrix R(4, 6);
  for (std::size_t j = 0; j < 6; ++j) {
    R(0, j) = random_rf(g);
    R(1, j) = random_rf(g);
    R(2, j) = R(0, j) * x + R(1, j) / (x + 3);
    R(3, j) = R(1, j).scaled(7) - R(0, j);
  }
  auto ker = nullspace(R);
  CHECK(ker.size() == 4);
  CHECK(ker == nullspace_naive(R));
  CHECK(rank(R) == 2);
}

TEST_CASE("nullspace over Q") {
  QMatrix M(2, 3);
  M(0, 0) = 1; M(0, 1) = 2; M(0, 2) = 3;
  M(1, 0) = 2; M(1, 1) = 4; M(1, 2) = Rational(7, 2);
  auto k = nullspace(M);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == QVector{-2, 1, 0});
}

#include <random>

#include "adjtower/diffop.hpp"
#include "adjtower/parser.hpp"
#include "doctest.h"

using namespace adjtower;

namespace {

DiffOperator op(const std::string& s) { return parse_operator(s); }

RatFunc random_coeff(std::mt19937_64& g) {
  auto rp = [&](int d) {
    std::vector<Rational> c(d + 1);
    for (auto& v : c) v = static_cast<long>(g() % 19) - 9;
    if (sgn(c.back()) == 0) c.back() = 1;
    return Poly(c);
  };
  Poly n = rp(static_cast<int>(g() % 3));
  if (g() % 3 == 0) return RatFunc(n);
  return RatFunc(n, rp(1 + static_cast<int>(g() % 2)));
}

DiffOperator random_op(std::mt19937_64& g, int order) {
  std::vector<RatFunc> c(order + 1);
  for (auto& v : c) v = random_coeff(g);
  while (c.back().is_zero()) c.back() = random_coeff(g);
  return DiffOperator(c);
}

}  // namespace

TEST_CASE("Leibniz products") {
  CHECK(op("Dx") * op("x") == op("x*Dx + 1"));
  CHECK(op("Dx^2") * op("x") == op("x*Dx^2 + 2*Dx"));
  CHECK(op("x*Dx") * op("x*Dx") == op("x^2*Dx^2 + x*Dx"));
}

TEST_CASE("parity-signed adjoint") {
  CHECK(adjoint(op("Dx")) == op("Dx"));
  CHECK(adjoint(op("x*Dx")) == op("x*Dx + 1"));
  CHECK(adjoint(op("x*Dx + 1/2")) == op("x*Dx + 1/2"));
  CHECK(is_self_adjoint(op("x*Dx + 1/2")));
  CHECK(is_self_adjoint(op("(x^2+1)*Dx^2 + 2*x*Dx + x")));
  CHECK_FALSE(is_self_adjoint(op("x*Dx")));

  std::mt19937_64 g(17);
  for (int t = 0; t < 300; ++t) {
    DiffOperator L = random_op(g, static_cast<int>(g() % 9));
    CHECK(adjoint(adjoint(L)) == L);
  }
  for (int t = 0; t < 200; ++t) {
    DiffOperator A = random_op(g, static_cast<int>(g() % 4)), B = random_op(g, static_cast<int>(g() % 4));
    CHECK(adjoint(A * B) == adjoint(B) * adjoint(A));
    if ((A.order() - B.order()) % 2 == 0 && (A + B).order() == std::max(A.order(), B.order()))
      CHECK(adjoint(A + B) == adjoint(A) + adjoint(B));
  }
  // Mixed parity breaks additivity.
  CHECK(adjoint(op("Dx + 1")) != adjoint(op("Dx")) + adjoint(op("1")));
}

TEST_CASE("euclidean divisions") {
  auto d = right_divide(op("Dx^2"), op("Dx"));
  CHECK(d.q == op("Dx"));
  CHECK(d.r.is_zero());
  d = right_divide(op("Dx^2 + 1"), op("Dx"));
  CHECK(d.q == op("Dx"));
  CHECK(d.r == op("1"));
  d = left_divide(op("x*Dx + 1"), op("x"));
  CHECK(d.q == op("Dx + 1/x"));
  CHECK(d.r.is_zero());
  CHECK_THROWS_AS(right_divide(op("Dx"), DiffOperator()), MathError);

  std::mt19937_64 g(23);
  for (int t = 0; t < 20; ++t) {
    DiffOperator A = random_op(g, 5), B = random_op(g, 3);
    auto rd = right_divide(A, B);
    CHECK(rd.r.order() < 3);
    CHECK(A - rd.q * B - rd.r == DiffOperator());
    DiffOperator A4 = random_op(g, 4), B2 = random_op(g, 2);
    auto ld = left_divide(A4, B2);
    CHECK(ld.r.order() <= 1);
    CHECK(A4 - B2 * ld.q - ld.r == DiffOperator());
  }
}

TEST_CASE("theta form round trip") {
  CHECK(op("theta") == op("x*Dx"));
  CHECK(op("theta^2") == op("x^2*Dx^2 + x*Dx"));
  std::mt19937_64 g(31);
  for (int t = 0; t < 100; ++t) {
    ThetaExpr e;
    int n = 1 + static_cast<int>(g() % 5);
    for (int k = 0; k < n; ++k) {
      Rational c(static_cast<long>(g() % 19) - 9, 1 + static_cast<long>(g() % 3));
      c.canonicalize();
      if (sgn(c) == 0) continue;
      e.terms[{static_cast<int>(g() % 5) - 1, static_cast<int>(g() % 5)}] += c;
    }
    for (auto it = e.terms.begin(); it != e.terms.end();)
      it = sgn(it->second) == 0 ? e.terms.erase(it) : std::next(it);
    CHECK(to_theta(from_theta(e)) == e);
  }
}

TEST_CASE("series application and Wronskian") {
  UnivariateSeries geo, ex;
  Rational f = 1;
  for (int n = 0; n < 30; ++n) {
    geo.c.push_back(1);
    ex.c.push_back(1 / f);
    f *= n + 1;
  }
  CHECK(apply_to_series(op("(1-x)*Dx - 1"), geo, 20).is_zero());
  CHECK(apply_to_series(op("Dx"), ex, 20) == ex.truncated(20));
  CHECK(wronskian_logderiv(op("Dx^2")).is_zero());
  CHECK(wronskian_logderiv(op("(x^2+1)*Dx^2 + 2*x*Dx + x")) == parse_ratfunc("-2*x/(x^2+1)"));
}

TEST_CASE("printing") {
  CHECK(op("x*Dx + 1/2").str() == "2*x*Dx + 1");
  CHECK(op("x*Dx + 1/2").exact_str() == "x*Dx + 1/2");
  CHECK(op("(x^2-1)*Dx^2 - Dx + x - 3").str() == "(x^2 - 1)*Dx^2 - Dx + x - 3");
  CHECK(op("Dx/x").exact_str() == "(1)/(x)*Dx - (1)/(x^2)");
  // Division by a function composes on the right.
  CHECK(op("Dx/x") == op("Dx") * op("1/x"));
  DiffOperator L = op("1/(x+5)*(x^2-1)*Dx^2 - Dx + x - 3");
  CHECK(op(L.str()) == op("(x^2-1)*Dx^2 - (x+5)*Dx + (x+5)*(x - 3)"));
  CHECK(op(L.exact_str()) == L);
}

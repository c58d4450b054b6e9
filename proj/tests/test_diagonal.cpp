#include <random>
#include <sstream>

#include "adjtower/diagonal.hpp"
#include "adjtower/fixtures.hpp"
#include "adjtower/parser.hpp"
#include "doctest.h"

using namespace adjtower;

namespace {

DiffOperator op(const std::string& s) { return parse_operator(s); }

Integer fact(long n) {
  Integer f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

// (1/3)_n 9^n / n!, the coefficients of (1 - 9x)^(-1/3)
UnivariateSeries cube_root_series(std::size_t n) {
  UnivariateSeries s;
  Rational c = 1;
  for (std::size_t k = 0; k < n; ++k) {
    s.c.push_back(c);
    Rational f(9 * (3 * static_cast<long>(k) + 1), 3 * static_cast<long>(k + 1));
    f.canonicalize();
    c *= f;
  }
  return s;
}

std::string random_template(std::mt19937_64& g) {
  auto c = [&] { return std::to_string(static_cast<long>(g() % 9) - 4); };
  return "1/(1 - (" + c() + ")*x - (" + c() + ")*y - (" + c() + ")*z - (" + c() + ")*x*y - (" + c() + ")*y*z^2 - (" +
         c() + ")*x^2*z^2)";
}

}  // namespace

TEST_CASE("trivariate parsing") {
  auto R = parse_trivariate("1/(1 - x - y - z)");
  CHECK(R.num.coeff(0, 0, 0) == 1);
  CHECK(R.den.coeff(0, 0, 0) == 1);
  CHECK(R.den.coeff(0, 1, 0) == -1);
  auto S = parse_trivariate("(x + y)^2 / (2 - z)");
  CHECK(S.num.coeff(1, 1, 0) == 2);
  CHECK(S.den.coeff(0, 0, 1) == -1);
  CHECK_THROWS_AS(parse_trivariate("1/(1 - w)"), ParseError);
  CHECK_THROWS_AS(parse_trivariate("1/0"), ParseError);
}

TEST_CASE("diagonal of 1/(1-x-y-z) is the central trinomial family") {
  auto R = parse_trivariate("1/(1 - x - y - z)");
  auto a = diag_series_expand(R, 8);
  auto b = diag_series_multinomial(R, 8);
  for (long M = 0; M < 8; ++M) {
    Integer want = fact(3 * M) / (fact(M) * fact(M) * fact(M));
    CHECK(a.c[M] == Rational(want));
    CHECK(b.c[M] == Rational(want));
  }
  CHECK(a.c[3] == 1680);
}

TEST_CASE("diagonal with a non-unit constant term") {
  // 1/(2 - x - y - z) = (1/2) / (1 - (x+y+z)/2)
  auto R = parse_trivariate("1/(2 - x - y - z)");
  auto a = diag_series_expand(R, 6);
  auto b = diag_series_multinomial(R, 6);
  for (long M = 0; M < 6; ++M) {
    Rational want(fact(3 * M) / (fact(M) * fact(M) * fact(M)));
    Integer p2 = 1;
    for (long i = 0; i < 3 * M + 1; ++i) p2 *= 2;
    want /= Rational(p2);
    CHECK(a.c[M] == want);
    CHECK(b.c[M] == want);
  }
}

TEST_CASE("diagonal of a function of x alone") {
  auto a = diag_series_expand(parse_trivariate("1/(1 - x)"), 5);
  CHECK(a.c == std::vector<Rational>{1, 0, 0, 0, 0});
  CHECK_THROWS_AS(diag_series_expand(parse_trivariate("1/(x - y)"), 3), MathError);
  CHECK_THROWS_AS(diag_series_multinomial(parse_trivariate("1/(1 - x*z)"), 3), MathError);
  CHECK_THROWS_AS(diag_series_multinomial(parse_trivariate("x/(1 - x)"), 3), MathError);
}

TEST_CASE("six-monomial rational function: both methods") {
  auto R = fixture_trivariate("generic");
  auto a = diag_series_expand(R, 12);
  auto b = diag_series_multinomial(R, 12);
  CHECK(a.c[0] == 1);
  CHECK(a.c[1] == 616);
  CHECK(a.c[2] == 947175);
  CHECK(a.c[3] == 1812651820);
  CHECK(a == b);
  auto head = fixture_series("generic_diag");
  CHECK(a.truncated(head.order()) == head);
  auto c = diag_series_expand(R, 30);
  for (auto& v : c.c) CHECK(v.get_den() == 1);
}

TEST_CASE("random six-monomial instances agree") {
  std::mt19937_64 g(2024);
  for (int t = 0; t < 20; ++t) {
    auto R = parse_trivariate(random_template(g));
    CHECK(diag_series_expand(R, 10) == diag_series_multinomial(R, 10));
  }
}

TEST_CASE("guessing first order equations") {
  UnivariateSeries geo;
  geo.c.assign(40, 1);
  auto L = guess_operator(geo, 1, 1);
  REQUIRE(L.has_value());
  CHECK(*L == op("(x - 1)*Dx + 1"));

  auto L2 = guess_operator(cube_root_series(40), 1, 1);
  REQUIRE(L2.has_value());
  CHECK(*L2 == op("(9*x - 1)*Dx + 3"));

  CHECK_THROWS_AS(guess_operator(geo.truncated(20), 1, 1), MathError);
  CHECK(guess_terms_required(9, 22) == 250);
}

TEST_CASE("guessing the exponential series") {
  // exp(x) satisfies y' = y but no equation of order 0
  UnivariateSeries e;
  Rational c = 1;
  for (int k = 0; k < 40; ++k) {
    e.c.push_back(c);
    c /= k + 1;
  }
  CHECK_FALSE(guess_operator(e, 0, 3).has_value());
  CHECK_FALSE(guess_operator(e, 1, 0).has_value());
  auto L = guess_operator(e, 1, 1);
  REQUIRE(L.has_value());
  CHECK(*L == op("Dx - 1"));
}

TEST_CASE("Hadamard cube of the cube-root series") {
  auto s = cube_root_series(60);
  auto h = hadamard_product(hadamard_product(s, s), s);
  auto L = guess_operator(h, 3, 1);
  REQUIRE(L.has_value());
  CHECK(*L == fixture_operator("hyp3f2").left_mul(RatFunc(Poly(1), Poly::x())).cleared_op());
}

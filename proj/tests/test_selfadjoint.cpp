#include <random>

#include "adjtower/parser.hpp"
#include "adjtower/selfadjoint.hpp"
#include "doctest.h"

using namespace adjtower;

TEST_CASE("explicit low-order shapes are self-adjoint") {
  std::mt19937_64 g(5);
  for (int t = 0; t < 40; ++t) {
    RatFunc a(random_poly(g, 3)), b(random_poly(g, 2));
    RatFunc c(random_poly(g, 2), random_poly(g, 1));
    CHECK(is_self_adjoint(make_order1(a)));
    CHECK(is_self_adjoint(make_order2(a, b)));
    CHECK(is_self_adjoint(make_order3(a, c)));
    CHECK(make_order1(a) == make_self_adjoint(1, {a}));
    CHECK(make_order2(a, b) == make_self_adjoint(2, {a, b}));
    CHECK(make_order3(a, c) == make_self_adjoint(3, {a, c}));
  }
  CHECK_THROWS_AS(make_order1(RatFunc()), MathError);
}

TEST_CASE("symmetrize fixes self-adjoint operators") {
  for (int q = 1; q <= 7; ++q)
    for (std::uint64_t s = 0; s < 5; ++s) {
      DiffOperator S = random_self_adjoint(q, 3, s);
      CHECK(S.order() == q);
      CHECK(S.lc().num_degree() == 3);
      CHECK(is_self_adjoint(S));
      CHECK(symmetrize(S) == S);
    }
  CHECK(random_self_adjoint(4, 2, 9) == random_self_adjoint(4, 2, 9));
}

// Closed-form coefficients below the free ones, checked against the
// symmetrization construction.
TEST_CASE("self-adjoint cascade formula") {
  std::mt19937_64 g(11);
  for (int q = 1; q <= 7; ++q)
    for (int t = 0; t < 5; ++t) {
      RatFunc aq(random_poly(g, 6)), aq2(random_poly(g, 5)), aq4(random_poly(g, 4)), aq6(random_poly(g, 3));
      DiffOperator S = make_self_adjoint(q, {aq, aq2, aq4, aq6});
      REQUIRE(is_self_adjoint(S));
      auto d = [](const RatFunc& f, int k) {
        RatFunc r = f;
        for (int i = 0; i < k; ++i) r = r.derivative();
        return r;
      };
      Rational Q = q;
      CHECK(S.coeff(q) == aq);
      CHECK(S.coeff(q - 1) == d(aq, 1).scaled(Q / 2));
      if (q >= 2) CHECK(S.coeff(q - 2) == aq2);
      if (q >= 3)
        CHECK(S.coeff(q - 3) == (d(aq2, 1) - d(aq, 3).scaled(Q * (Q - 1) / 12)).scaled((Q - 2) / 2));
      if (q >= 4) CHECK(S.coeff(q - 4) == aq4);
      if (q >= 5)
        CHECK(S.coeff(q - 5) == (d(aq4, 1) - d(aq2, 3).scaled((Q - 2) * (Q - 3) / 12) +
                                 d(aq, 5).scaled(Q * (Q - 1) * (Q - 2) * (Q - 3) / 120))
                                    .scaled((Q - 4) / 2));
      if (q >= 6) CHECK(S.coeff(q - 6) == aq6);
    }
}

TEST_CASE("right normalization to self-adjoint") {
  std::mt19937_64 g(23);
  for (int t = 0; t < 20; ++t) {
    int q = 1 + static_cast<int>(g() % 4);
    DiffOperator S = random_self_adjoint(q, 2, g());
    RatFunc f(random_poly(g, 2), random_poly(g, 1));
    DiffOperator L = S * DiffOperator(f.inverse());
    auto h = right_normalize_self_adjoint(L);
    REQUIRE(h.has_value());
    CHECK(is_self_adjoint(L * DiffOperator(*h)));
  }
  // Dx + 1 needs exp(x/2): no rational normalizer.
  CHECK_FALSE(right_normalize_self_adjoint(parse_operator("Dx + 1")).has_value());
}

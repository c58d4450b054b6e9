#include <random>

#include "adjtower/homomorphisms.hpp"
#include "adjtower/linalg.hpp"
#include "adjtower/parser.hpp"
#include "adjtower/powers.hpp"
#include "adjtower/ratsol.hpp"
#include "adjtower/selfadjoint.hpp"
#include "adjtower/tower.hpp"
#include "doctest.h"

using namespace adjtower;

namespace {

DiffOperator op(const std::string& s) { return parse_operator(s); }

// Is X a Q-linear combination of the basis operators?
bool in_span(const DiffOperator& X, const std::vector<DiffOperator>& basis) {
  std::vector<DiffOperator> all = basis;
  all.push_back(X);
  Poly den(1);
  int ord = 0;
  for (auto& B : all) {
    ord = std::max(ord, B.order());
    for (auto& c : B.coeffs())
      if (!c.is_zero()) den = lcm(den, c.den());
  }
  std::vector<std::vector<Poly>> cols;
  int deg = 0;
  for (auto& B : all) {
    std::vector<Poly> c(ord + 1);
    for (int i = 0; i <= B.order(); ++i)
      if (!B.coeff(i).is_zero()) {
        c[i] = divmod(B.coeff(i).num() * den, B.coeff(i).den()).first;
        deg = std::max(deg, c[i].degree());
      }
    cols.push_back(c);
  }
  QMatrix M((ord + 1) * (deg + 1), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i <= ord; ++i)
      for (int e = 0; e <= cols[j][i].degree(); ++e) M(i * (deg + 1) + e, j) = cols[j][i].coeff(e);
  for (auto& v : nullspace(M))
    if (sgn(v.back()) != 0) return true;
  return false;
}

DiffOperator generic_order2(std::uint64_t seed, Poly* wronskian) {
  std::mt19937_64 g(seed);
  Poly a2 = random_poly(g, 2), a0 = random_poly(g, 2), W = random_poly(g, 2);
  *wronskian = W;
  // a2 y'' - a2 W'/W y' + a0 y has Wronskian W
  return DiffOperator({RatFunc(a0), RatFunc(-(a2 * W.derivative()), W), RatFunc(a2)});
}

}  // namespace

TEST_CASE("check_intertwiner examples") {
  CHECK(check_intertwiner(op("Dx^2 + 1"), op("Dx")));
  CHECK_FALSE(check_intertwiner(op("Dx^2 + 1"), op("x*Dx")));
  CHECK(check_intertwiner(op("x*Dx + 1/2"), op("1")));
}

TEST_CASE("order zero search on a self-adjoint operator finds constants") {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    DiffOperator L = random_self_adjoint(2 + static_cast<int>(s % 2), 2, s);
    AnsatzBounds b;
    b.order = 0;
    b.numerator_degree = 3;
    auto r = intertwiner_search(L, b);
    REQUIRE(r.basis.size() == 1);
    CHECK(r.basis[0].order() == 0);
    CHECK(r.basis[0].coeff(0).is_constant());
  }
}

TEST_CASE("search span contains the built intertwiner") {
  std::mt19937_64 g(77);
  const std::vector<std::vector<int>> patterns{{1, 1}, {2, 2}, {1, 1, 1}, {1, 3}, {2, 2, 2}, {1, 1, 1, 1}};
  for (int t = 0; t < 50; ++t) {
    const auto& orders = patterns[t % patterns.size()];
    Decomposition d;
    for (int q : orders) d.units.push_back(random_self_adjoint(q, 1, g()));
    Poly n = random_poly(g, 1), dr = random_poly(g, 1);
    d.r = gcd(n, dr).degree() > 0 ? RatFunc(n) : RatFunc(n, dr);
    auto tr = build(d);
    const DiffOperator& L = tr.L.back();
    const DiffOperator& X = tr.L[tr.L.size() - 2];
    REQUIRE(check_intertwiner(L, X));
    AnsatzBounds b;
    b.order = X.order();
    Poly den(1);
    for (auto& c : X.coeffs())
      if (!c.is_zero()) den = lcm(den, c.den());
    b.denominator = den;
    b.numerator_degree = 0;
    for (auto& c : X.coeffs())
      if (!c.is_zero()) b.numerator_degree = std::max(b.numerator_degree, (c * RatFunc(den)).num().degree());
    auto r = intertwiner_search(L, b);
    REQUIRE_FALSE(r.basis.empty());
    for (auto& B : r.basis) CHECK(check_intertwiner(L, B));
    CHECK(in_span(X, r.basis));
  }
}

TEST_CASE("search rejects bad bounds") {
  AnsatzBounds b;
  b.order = 2;
  CHECK_THROWS_AS(intertwiner_search(op("Dx^2 + x"), b), MathError);
  CHECK_THROWS_AS(intertwiner_search(DiffOperator(), AnsatzBounds{}), MathError);
}

TEST_CASE("transform_solutions on small operators") {
  auto t = transform_solutions(op("Dx^2"), op("Dx"));
  CHECK(t.ltilde == op("Dx"));
  CHECK(t.ltilde * op("Dx") == t.cofactor * op("Dx^2"));
  t = transform_solutions(op("Dx^3"), op("Dx"));
  CHECK(t.ltilde == op("Dx^2"));
  // y = exp(x): y' = y
  t = transform_solutions(op("Dx - 1"), op("Dx + x"));
  CHECK(t.ltilde.order() == 1);
  CHECK_THROWS_AS(transform_solutions(op("Dx^2"), op("Dx^2")), MathError);
}

TEST_CASE("transform of an order three self-adjoint operator by Dx^3") {
  DiffOperator L = random_self_adjoint(3, 1, 11);
  auto t = transform_solutions(L, DiffOperator::D(3));
  CHECK(t.ltilde.order() == 3);
  CHECK(t.ltilde * DiffOperator::D(3) == t.cofactor * L);
  auto X = find_intertwiner(t.ltilde);
  REQUIRE(X.has_value());
  auto ex = extract(t.ltilde, *X);
  REQUIRE(ex.dec.units.size() == 3);
  for (auto& U : ex.dec.units) {
    CHECK(U.order() == 1);
    CHECK(adjoint(U) == U);
  }
  CHECK(build_operator(ex.dec) == t.ltilde);
}

TEST_CASE("symmetric square equivalent of a generic order two operator") {
  Poly W;
  DiffOperator L2 = generic_order2(1, &W);
  DiffOperator L3 = sym_power_equivalent(L2, 2);
  CHECK(L3.order() == 3);
  auto S = sym_square(L3);
  CHECK(S.op.order() == 6);
  auto rs = rational_solutions(S.op);
  REQUIRE(rs.basis.size() == 1);
  CHECK((rs.basis[0] / RatFunc(W * W)).is_constant());

  Poly lc = L3.cleared().back().monic();
  AnsatzBounds b;
  b.order = 2;
  b.denominator = lc * lc;
  b.numerator_degree = 2 * lc.degree();
  auto r = intertwiner_search(L3, b);
  REQUIRE_FALSE(r.basis.empty());
  auto ex = extract(L3, r.basis[0]);
  REQUIRE(ex.dec.units.size() == 3);
  for (auto& U : ex.dec.units) CHECK(U.order() == 1);
  CHECK(build_operator(ex.dec) == L3);
}

TEST_CASE("symmetric cube equivalent gives two order two units") {
  Poly W;
  DiffOperator L2 = generic_order2(1, &W);
  DiffOperator L4 = sym_power_equivalent(L2, 3);
  CHECK(L4.order() == 4);
  Poly lc = L4.cleared().back().monic();
  AnsatzBounds b;
  b.order = 2;
  b.denominator = lc;
  b.numerator_degree = lc.degree() + 4;
  auto r = intertwiner_search(L4, b);
  REQUIRE_FALSE(r.basis.empty());
  auto ex = extract(L4, r.basis[0]);
  REQUIRE(ex.dec.units.size() == 2);
  CHECK(ex.dec.units[0].order() == 2);
  CHECK(ex.dec.units[1].order() == 2);
  CHECK(build_operator(ex.dec) == L4);
}

TEST_CASE("intertwiners of Kolchin reduced forms") {
  for (int q : {4, 5}) {
    auto S = kolchin_orthogonal_system(q, 1, 3);
    QxVector c(q);
    c[0] = RatFunc(1);
    auto L = cyclic_operator(S, c).op;
    auto X = kolchin_intertwiner(S, c);
    CHECK(check_intertwiner(L, X));
    for (const auto& U : extract(L, X).dec.units) CHECK(U.order() == 1);
  }
  auto S = kolchin_symplectic_system(3, 1, 3);
  QxVector c(6);
  c[0] = RatFunc(1);
  auto L = cyclic_operator(S, c).op;
  auto X = kolchin_intertwiner(S, c);
  CHECK(check_intertwiner(L, X));
  auto units = extract(L, X).dec.units;
  CHECK(units.size() == 3);
  for (const auto& U : units) CHECK(U.order() == 2);

  // the generic search finds one too on a small case
  auto S4 = kolchin_orthogonal_system(4, 1, 3);
  QxVector c4(4);
  c4[0] = RatFunc(1);
  auto L4 = cyclic_operator(S4, c4).op;
  auto Y = find_intertwiner(L4);
  REQUIRE(Y.has_value());
  CHECK(check_intertwiner(L4, *Y));

  CompanionSystem bad;
  bad.A = QxMatrix(3, 3);
  bad.A(0, 1) = RatFunc(Poly::x());
  CHECK_THROWS_AS(kolchin_intertwiner(bad, {RatFunc(1), RatFunc(), RatFunc()}), MathError);
  CompanionSystem zero;
  zero.A = QxMatrix(2, 2);  // antisymmetric, but no form is cyclic
  CHECK_THROWS_AS(kolchin_intertwiner(zero, {RatFunc(1), RatFunc()}), MathError);
}

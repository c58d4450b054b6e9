#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adjtower/errors.hpp"
#include "adjtower/ratfunc.hpp"
#include "adjtower/series.hpp"

namespace adjtower {

// Linear differential operator sum_i a_i(x) Dx^i with a_i in Q(x).
class DiffOperator {
 public:
  DiffOperator() = default;
  DiffOperator(const RatFunc& f);  // NOLINT: order-0 operator
  DiffOperator(long c) : DiffOperator(RatFunc(c)) {}
  explicit DiffOperator(std::vector<RatFunc> coeffs);

  static DiffOperator D(int k = 1);
  static DiffOperator theta();  // x*Dx

  int order() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<RatFunc>& coeffs() const { return c_; }
  RatFunc coeff(int i) const;
  const RatFunc& lc() const;

  DiffOperator operator-() const;
  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  // Composition.
  friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);
  DiffOperator scaled(const Rational& c) const;
  // f * L (multiply every coefficient).
  DiffOperator left_mul(const RatFunc& f) const;

  bool operator==(const DiffOperator& o) const { return c_ == o.c_; }
  bool operator!=(const DiffOperator& o) const { return !(*this == o); }

  // L(y) for a rational function y.
  RatFunc apply(const RatFunc& y) const;

  // Polynomial coefficients with common denominators cleared, integer
  // content removed and the leading coefficient's leading term positive.
  std::vector<Poly> cleared() const;
  DiffOperator cleared_op() const;
  std::string str() const;          // cleared form
  std::string exact_str() const;    // rational-function coefficients as stored

 private:
  void trim();
  std::vector<RatFunc> c_;
};

// Formal adjoint sum_i (-D)^i o a_i (linear, anti-multiplicative).
DiffOperator formal_adjoint(const DiffOperator& L);
// (-1)^{ord L} times the formal adjoint. Under this sign the shapes
// a1*Dx + a1'/2 and a2*Dx^2 + a2'*Dx + a0 are both fixed points; it is
// additive only on operators whose orders have the same parity.
DiffOperator adjoint(const DiffOperator& L);
bool is_self_adjoint(const DiffOperator& L);

struct Division {
  DiffOperator q, r;
};
// A = q*B + r with ord r < ord B.
Division right_divide(const DiffOperator& A, const DiffOperator& B);
// A = B*q + r with ord r < ord B.
Division left_divide(const DiffOperator& A, const DiffOperator& B);

// -a_{n-1}/a_n, the logarithmic derivative of the Wronskian.
RatFunc wronskian_logderiv(const DiffOperator& L);

// First n coefficients of L(s); every coefficient of L must be regular at 0.
UnivariateSeries apply_to_series(const DiffOperator& L, const UnivariateSeries& s, std::size_t n);

// sum c_{ij} x^i theta^j with theta = x*Dx; negative powers of x allowed.
struct ThetaExpr {
  std::map<std::pair<int, int>, Rational> terms;  // (x power, theta power) -> coefficient
  bool operator==(const ThetaExpr& o) const { return terms == o.terms; }
  std::string str() const;
};

DiffOperator from_theta(const ThetaExpr& e);
// Requires coefficients that are Laurent polynomials in x.
ThetaExpr to_theta(const DiffOperator& L);

// L = sum_j b_j theta^j with rational b_j.
std::vector<RatFunc> theta_coefficients(const DiffOperator& L);
DiffOperator from_theta_coefficients(const std::vector<RatFunc>& b);

// Binomial coefficient as a plain integer.
Integer binomial(long n, long k);

}  // namespace adjtower

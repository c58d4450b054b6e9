#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "adjtower/diffop.hpp"
#include "adjtower/series.hpp"

namespace adjtower {

// Sparse polynomial in x, y, z with integer coefficients.
struct TriPoly {
  std::map<std::array<int, 3>, Integer> terms;  // (i, j, k) -> coefficient of x^i y^j z^k

  Integer coeff(int i, int j, int k) const;
  bool is_zero() const { return terms.empty(); }
  std::string str() const;
};

TriPoly operator+(const TriPoly& a, const TriPoly& b);
TriPoly operator-(const TriPoly& a, const TriPoly& b);
TriPoly operator*(const TriPoly& a, const TriPoly& b);

struct TrivariateRational {
  TriPoly num, den;
  std::string str() const;
};

// "num / den" style expressions in x, y, z with integer literals, + - * ^
// and parentheses; division may appear anywhere.
TrivariateRational parse_trivariate(const std::string& text);

// [x^M y^M z^M] R for M < n, from the Taylor expansion of R at the origin.
UnivariateSeries diag_series_expand(const TrivariateRational& R, std::size_t n);

// Same coefficients for R = 1 / (1 - P) with P supported on the monomials
// x, y, z, x*y, y*z^2, x^2*z^2, summed over multinomial coefficients.
UnivariateSeries diag_series_multinomial(const TrivariateRational& R, std::size_t n);

constexpr int kGuessMargin = 20;

std::size_t guess_terms_required(int order, int degree, int margin = kGuessMargin);

// Operator sum_{i <= order} p_i(x) theta^i, deg p_i <= degree, annihilating
// s, returned in Dx form with any common left power of x removed. Solves on
// all but the last `margin` equations and checks the rest. Throws MathError when s has fewer than guess_terms_required terms.
std::optional<DiffOperator> guess_operator(const UnivariateSeries& s, int order, int degree, int margin = kGuessMargin);

}  // namespace adjtower

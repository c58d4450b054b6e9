#pragma once

#include <string>

#include "adjtower/diffop.hpp"

namespace adjtower {

// Expressions over Q(x)<Dx>: integer literals, x, Dx (or D), theta, + - * / ^
// and parentheses. '*' is composition. Division is only allowed by an
// order-0 expression f and means right composition with 1/f. Exponents are
// integers; negative exponents only for order-0 bases.
DiffOperator parse_operator(const std::string& text);
RatFunc parse_ratfunc(const std::string& text);
Poly parse_poly(const std::string& text);

}  // namespace adjtower

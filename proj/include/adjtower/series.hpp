#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "adjtower/poly.hpp"

namespace adjtower {

// Truncated power series c_0 + c_1 x + ... + c_{n-1} x^{n-1} (+ O(x^n)).
struct UnivariateSeries {
  std::vector<Rational> c;

  std::size_t order() const { return c.size(); }
  bool operator==(const UnivariateSeries& o) const { return c == o.c; }
  bool is_zero() const;
  UnivariateSeries truncated(std::size_t n) const;
};

UnivariateSeries hadamard_product(const UnivariateSeries& s, const UnivariateSeries& t);
UnivariateSeries series_mul(const UnivariateSeries& s, const UnivariateSeries& t);
UnivariateSeries series_derivative(const UnivariateSeries& s);
// Expansion of p / q at 0 to n terms; q(0) != 0.
UnivariateSeries series_of(const Poly& p, const Poly& q, std::size_t n);

// One rational per line; blank lines and text after '#' are ignored.
UnivariateSeries read_series(std::istream& in);
UnivariateSeries read_series_file(const std::string& path);
void write_series(std::ostream& out, const UnivariateSeries& s);

}  // namespace adjtower

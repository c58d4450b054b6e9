#include "adjtower/series.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "adjtower/errors.hpp"

namespace adjtower {

bool UnivariateSeries::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Rational& v) { return sgn(v) == 0; });
}

UnivariateSeries UnivariateSeries::truncated(std::size_t n) const {
  UnivariateSeries r;
  r.c.assign(c.begin(), c.begin() + std::min(n, c.size()));
  return r;
}

UnivariateSeries hadamard_product(const UnivariateSeries& s, const UnivariateSeries& t) {
  UnivariateSeries r;
  std::size_t n = std::min(s.order(), t.order());
  r.c.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.c[i] = s.c[i] * t.c[i];
  return r;
}

UnivariateSeries series_mul(const UnivariateSeries& s, const UnivariateSeries& t) {
  UnivariateSeries r;
  std::size_t n = std::min(s.order(), t.order());
  r.c.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(s.c[i]) == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) r.c[i + j] += s.c[i] * t.c[j];
  }
  return r;
}

UnivariateSeries series_derivative(const UnivariateSeries& s) {
  UnivariateSeries r;
  if (s.order() == 0) return r;
  r.c.resize(s.order() - 1);
  for (std::size_t i = 1; i < s.order(); ++i) r.c[i - 1] = s.c[i] * static_cast<long>(i);
  return r;
}

UnivariateSeries series_of(const Poly& p, const Poly& q, std::size_t n) {
  Rational q0 = q.coeff(0);
  if (sgn(q0) == 0) throw MathError("series expansion: denominator vanishes at 0");
  UnivariateSeries r;
  r.c.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    Rational acc = p.coeff(static_cast<int>(k));
    for (int j = 1; j <= q.degree() && static_cast<std::size_t>(j) <= k; ++j) acc -= q.coeff(j) * r.c[k - j];
    r.c[k] = acc / q0;
  }
  return r;
}

UnivariateSeries read_series(std::istream& in) {
  UnivariateSeries s;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char ch) { return std::isspace(ch); }), line.end());
    if (line.empty()) continue;
    Rational v;
    if (v.set_str(line, 10) != 0) throw ParseError("series line " + std::to_string(lineno) + ": not a rational: " + line);
    v.canonicalize();
    s.c.push_back(v);
  }
  return s;
}

UnivariateSeries read_series_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open series file: " + path);
  return read_series(f);
}

void write_series(std::ostream& out, const UnivariateSeries& s) {
  for (const auto& v : s.c) out << v.get_str() << '\n';
}

}  // namespace adjtower

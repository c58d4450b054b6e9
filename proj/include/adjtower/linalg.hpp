#pragma once

#include <cstddef>
#include <vector>

#include "adjtower/ratfunc.hpp"

namespace adjtower {

template <class T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using QMatrix = Matrix<Rational>;
using QxMatrix = Matrix<RatFunc>;
using QVector = std::vector<Rational>;
using QxVector = std::vector<RatFunc>;

QxMatrix mat_mul(const QxMatrix& A, const QxMatrix& B);
QxMatrix transpose(const QxMatrix& A);
QxMatrix identity_qx(std::size_t n);

// Right kernel bases in reduced form: every vector has a 1 in its own free
// column and 0 in the other free columns. Computed by evaluation at random
// points modulo word-size primes, interpolation and rational reconstruction,
// then re-verified exactly (M * v = 0) before being returned. The basis size
// equals the number of free columns of a modular reduction, which bounds the
// true nullity from above, so the returned basis is complete.
std::vector<QxVector> nullspace(const QxMatrix& M);
std::vector<QVector> nullspace(const QMatrix& M);

// Generic rank (exact: equals cols minus the certified nullity).
std::size_t rank(const QxMatrix& M);

// Plain fraction-based Gauss-Jordan elimination over Q(x). Slow; used as a
// cross-check.
std::vector<QxVector> nullspace_naive(const QxMatrix& M);

// Worker threads for the modular phases (results do not depend on it).
void set_threads(unsigned n);
unsigned threads();

}  // namespace adjtower

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adjtower/diffop.hpp"
#include "adjtower/linalg.hpp"

namespace adjtower {

// Y' = A Y.
struct CompanionSystem {
  QxMatrix A;
  std::string note;
};

// Y = (y, y', ..., y^(n-1)).
CompanionSystem companion(const DiffOperator& L);

struct PowerResult {
  DiffOperator op;   // monic
  int full_dim = 0;  // dimension of the power module
  bool drop = false; // ord op < full_dim
};

constexpr int kDefaultPowerCap = 36;

PowerResult sym_square(const DiffOperator& L, int cap = kDefaultPowerCap);
PowerResult ext_square(const DiffOperator& L, int cap = kDefaultPowerCap);
PowerResult sym_power(const DiffOperator& L, int m, int cap = kDefaultPowerCap);
PowerResult ext_power(const DiffOperator& L, int m, int cap = kDefaultPowerCap);

struct CyclicResult {
  DiffOperator op;  // monic
  bool cyclic = false;  // order equals the system size
};

// Minimal operator annihilating c . Y for the solutions of Y' = A Y.
CyclicResult cyclic_operator(const CompanionSystem& S, const QxVector& c);

// Antisymmetric q x q matrix with random integer polynomial entries.
CompanionSystem kolchin_orthogonal_system(int q, int degree, std::uint64_t seed);
// J * A with A symmetric 2p x 2p, J = [[0, I], [-I, 0]].
CompanionSystem kolchin_symplectic_system(int p, int degree, std::uint64_t seed);
QxMatrix symplectic_J(int p);
bool is_antisymmetric(const QxMatrix& A);
// (J A)^T J + J (J A) == 0 for the given B = J A.
bool is_infinitesimally_symplectic(const QxMatrix& B);

}  // namespace adjtower

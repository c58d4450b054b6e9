#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adjtower/diffop.hpp"

namespace adjtower {

// L = (U_N ... U_1 + ...) * r, the continuant of self-adjoint units of one
// parity times a right factor r.
struct Decomposition {
  std::vector<DiffOperator> units;  // U_1 ... U_N
  RatFunc r = RatFunc(1);
};

// Throws MathError unless every unit is self-adjoint, orders share one parity
// and r is nonzero.
void validate(const Decomposition& dec);

struct TowerStep {
  int k = 0;                          // L_[k] = U_k * L_[k-1] + L_[k-2]
  bool quotient_self_adjoint = false;
  int remainder_order = -1;           // order of L_[k-2] (-1 for zero)
};

struct TowerTrace {
  std::vector<DiffOperator> L;      // L_[0] ... L_[N]
  std::vector<DiffOperator> units;  // U_1 ... U_N
  std::vector<TowerStep> steps;     // one per k = 1..N
};

TowerTrace build(const Decomposition& dec);
DiffOperator build_operator(const Decomposition& dec);

// Index patterns of the products in the expansion of L_[N]; each pattern
// lists unit indices in descending order, the empty pattern is 1.
std::vector<std::vector<int>> expand_terms(int N);
// Sum of the products times r.
DiffOperator expand_operator(const Decomposition& dec);

// Thrown when a remainder vanishes before the tower reaches order 0.
struct ReducibleTower : MathError {
  using MathError::MathError;
};

struct Extraction {
  Decomposition dec;
  TowerTrace trace;
};

// Successive right divisions starting from L and its first intertwiner X.
Extraction extract(const DiffOperator& L, const DiffOperator& X);

// adjoint(L_[k-1]) L_[k] == adjoint(L_[k]) L_[k-1] for k = 1..N; returns the
// first failing k, or nullopt.
std::optional<int> verify_intertwining_chain(const TowerTrace& trace);

// Decomposition of adjoint(L_[N]) of the same form.
Decomposition adjoint_decomposition(const Decomposition& dec);

// Operator r^{(-1)^j} * K(U_{j+1}, ..., U_N), where K is the left-built
// continuant; j = 0 gives adjoint(L_[N]).
DiffOperator dual_tower_operator(const Decomposition& dec, int j);

struct InversionResult {
  Rational c_ml, c_lm;
};
// Checks M_[N-1]^(N) L_[N-1] - M_[N-2]^(N-1) L_[N] == c_ml and
// L_[N-1] M_[N-1]^(N) - adjoint(M_[N-2]^(N-1)) adjoint(L_[N]) == c_lm with
// both constants equal to -(-1)^N; throws MathError otherwise.
InversionResult inversion_check(const Decomposition& dec);

struct Family {
  bool orthogonal = true;  // odd unit orders: SO(q); even: Sp(q)
  int dimension = 0;
  bool generic = false;    // all units of order 1, or all of order 2
  std::string str() const;
};
Family classify_family(const Decomposition& dec);

// B = Lm * a * Ln + lambda / a. Checks Ln a B == adjoint(B) a Ln and
// B a Lm == Lm a adjoint(B); throws MathError if either fails.
DiffOperator build_bracket_form(const DiffOperator& Ln, const DiffOperator& Lm, const RatFunc& a, const Rational& lambda);

// Operator identities for self-adjoint M, N, P, Q of one parity and r.
struct IdentityReport {
  std::map<std::string, bool> holds;
  bool all() const;
};
IdentityReport identity_suite(const DiffOperator& M, const DiffOperator& N, const DiffOperator& P, const DiffOperator& Q,
                              const RatFunc& r);

// Plain-text key-value document.
struct DocumentInfo {
  std::map<std::string, std::string> extra;  // additional certificate.* etc.
};
std::string write_document(const Decomposition& dec, const DocumentInfo& info = {});
Decomposition read_document(const std::string& text);
std::map<std::string, std::string> read_key_values(const std::string& text);

long fibonacci_count(int N);  // number of expansion terms: 1,1,2,3,5,...

// Units random_self_adjoint(q_k, 1 or 2, .), r = n/d with n, d random of
// degree 1 (r = 1 when with_r is false). Deterministic per seed; orders are
// not checked for parity.
Decomposition random_decomposition(const std::vector<int>& orders, std::uint64_t seed, bool with_r = true);

}  // namespace adjtower

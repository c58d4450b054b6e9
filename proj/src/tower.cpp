#include "adjtower/tower.hpp"

#include <sstream>

#include "adjtower/parser.hpp"
#include "adjtower/selfadjoint.hpp"

namespace adjtower {

namespace {

DiffOperator op_of(const RatFunc& f) { return DiffOperator(f); }

// K(a_1..a_k) = K(a_1..a_{k-1}) a_k + K(a_1..a_{k-2})
DiffOperator left_continuant(const std::vector<DiffOperator>& a, std::size_t from, std::size_t to) {
  DiffOperator prev2, prev1(1);
  for (std::size_t i = from; i < to; ++i) {
    DiffOperator next = prev1 * a[i] + prev2;
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  return prev1;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void validate(const Decomposition& dec) {
  if (dec.r.is_zero()) throw MathError("decomposition: r must be nonzero");
  for (std::size_t k = 0; k < dec.units.size(); ++k) {
    const auto& U = dec.units[k];
    if (U.order() < 1) throw MathError("decomposition: unit " + std::to_string(k + 1) + " has order < 1");
    if (!is_self_adjoint(U)) throw MathError("decomposition: unit " + std::to_string(k + 1) + " is not self-adjoint");
    if ((U.order() - dec.units[0].order()) % 2 != 0)
      throw MathError("decomposition: unit orders must share one parity (unit " + std::to_string(k + 1) + " has order " +
                      std::to_string(U.order()) + ", unit 1 has order " + std::to_string(dec.units[0].order()) + ")");
  }
}

TowerTrace build(const Decomposition& dec) {
  validate(dec);
  TowerTrace t;
  t.units = dec.units;
  DiffOperator prev2;
  t.L.push_back(op_of(dec.r));
  for (std::size_t k = 1; k <= dec.units.size(); ++k) {
    DiffOperator next = dec.units[k - 1] * t.L.back() + prev2;
    TowerStep s;
    s.k = static_cast<int>(k);
    s.quotient_self_adjoint = true;
    s.remainder_order = prev2.order();
    t.steps.push_back(s);
    prev2 = t.L.back();
    t.L.push_back(std::move(next));
  }
  return t;
}

DiffOperator build_operator(const Decomposition& dec) { return build(dec).L.back(); }

std::vector<std::vector<int>> expand_terms(int N) {
  if (N < 0) throw MathError("expand_terms: negative length");
  std::vector<std::vector<int>> prev2, prev1{{}};
  for (int k = 1; k <= N; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& t : prev1) {
      std::vector<int> u{k};
      u.insert(u.end(), t.begin(), t.end());
      next.push_back(std::move(u));
    }
    next.insert(next.end(), prev2.begin(), prev2.end());
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  return prev1;
}

long fibonacci_count(int N) {
  if (N <= 1) return 1;
  long a = 1, b = 1;
  for (int k = 2; k <= N; ++k) {
    long c = a + b;
    a = b;
    b = c;
  }
  return b;
}

DiffOperator expand_operator(const Decomposition& dec) {
  validate(dec);
  DiffOperator sum;
  for (const auto& t : expand_terms(static_cast<int>(dec.units.size()))) {
    DiffOperator p(1);
    for (int k : t) p = p * dec.units[k - 1];
    sum += p;
  }
  return sum * op_of(dec.r);
}

Extraction extract(const DiffOperator& L, const DiffOperator& X) {
  if (L.order() < 1) throw MathError("extract: operator must have positive order");
  if (X.is_zero() || X.order() >= L.order()) throw MathError("extract: intertwiner must be nonzero of lower order");
  if (adjoint(X) * L != adjoint(L) * X) throw MathError("extract: invalid intertwiner (adjoint(X) L != adjoint(L) X)");

  // Walk down: cur = L_[k], below = L_[k-1].
  std::vector<DiffOperator> ops{L, X};
  std::vector<DiffOperator> quotients;  // U_N, U_{N-1}, ...
  std::vector<TowerStep> steps;
  while (ops.back().order() > 0) {
    const DiffOperator& cur = ops[ops.size() - 2];
    const DiffOperator& below = ops.back();
    Division d = right_divide(cur, below);
    TowerStep s;
    s.quotient_self_adjoint = is_self_adjoint(d.q);
    s.remainder_order = d.r.order();
    steps.push_back(s);
    if (!s.quotient_self_adjoint) throw MathError("extract: invalid intertwiner (quotient " + std::to_string(quotients.size() + 1) + " is not self-adjoint)");
    if (d.r.is_zero()) throw ReducibleTower("extract: reducible tower (remainder vanished at an operator of order " + std::to_string(below.order()) + ")");
    quotients.push_back(d.q);
    ops.push_back(d.r);
  }
  // ops.back() is r; the last quotient is L_[1] * (1/r).
  const DiffOperator& L1 = ops[ops.size() - 2];
  RatFunc r = ops.back().coeff(0);
  DiffOperator U1 = L1 * op_of(r.inverse());
  TowerStep s;
  s.quotient_self_adjoint = is_self_adjoint(U1);
  s.remainder_order = -1;
  steps.push_back(s);
  if (!s.quotient_self_adjoint) throw MathError("extract: invalid intertwiner (last quotient is not self-adjoint)");
  quotients.push_back(U1);

  Extraction e;
  e.dec.units.assign(quotients.rbegin(), quotients.rend());
  e.dec.r = r;
  e.trace.units = e.dec.units;
  e.trace.L.assign(ops.rbegin(), ops.rend());
  int N = static_cast<int>(e.dec.units.size());
  for (int i = 0; i < N; ++i) {
    TowerStep st = steps[N - 1 - i];
    st.k = i + 1;
    e.trace.steps.push_back(st);
  }
  validate(e.dec);
  return e;
}

std::optional<int> verify_intertwining_chain(const TowerTrace& trace) {
  for (std::size_t k = 1; k < trace.L.size(); ++k)
    if (adjoint(trace.L[k - 1]) * trace.L[k] != adjoint(trace.L[k]) * trace.L[k - 1]) return static_cast<int>(k);
  return std::nullopt;
}

Decomposition adjoint_decomposition(const Decomposition& dec) {
  validate(dec);
  int N = static_cast<int>(dec.units.size());
  Decomposition out;
  RatFunc rinv = dec.r.inverse();
  out.r = N % 2 == 0 ? dec.r : rinv;
  for (int j = 1; j <= N; ++j) {
    int k = N + 1 - j;
    const RatFunc& f = (k % 2 == 1) ? dec.r : rinv;
    out.units.push_back(op_of(f) * dec.units[k - 1] * op_of(f));
  }
  return out;
}

DiffOperator dual_tower_operator(const Decomposition& dec, int j) {
  int N = static_cast<int>(dec.units.size());
  if (j < 0 || j > N) throw MathError("dual_tower_operator: index out of range");
  RatFunc f = j % 2 == 0 ? dec.r : dec.r.inverse();
  return op_of(f) * left_continuant(dec.units, j, N);
}

InversionResult inversion_check(const Decomposition& dec) {
  validate(dec);
  int N = static_cast<int>(dec.units.size());
  if (N < 2) throw MathError("inversion_check: needs at least two units");
  TowerTrace t = build(dec);
  Decomposition shorter{std::vector<DiffOperator>(dec.units.begin(), dec.units.end() - 1), dec.r};
  DiffOperator M1 = dual_tower_operator(dec, 1);
  DiffOperator M2 = dual_tower_operator(shorter, 1);
  DiffOperator cml = M1 * t.L[N - 1] - M2 * t.L[N];
  DiffOperator clm = t.L[N - 1] * M1 - adjoint(M2) * adjoint(t.L[N]);
  auto constant = [](const DiffOperator& c, const char* what) {
    if (c.order() > 0 || (!c.is_zero() && !c.coeff(0).is_constant()))
      throw MathError(std::string("inversion_check: ") + what + " is not a constant");
    return c.is_zero() ? Rational(0) : c.coeff(0).constant_value();
  };
  InversionResult res{constant(cml, "C_ML"), constant(clm, "C_LM")};
  Rational expect = N % 2 == 0 ? -1 : 1;
  if (res.c_ml != expect || res.c_lm != expect)
    throw MathError("inversion_check: constants " + rational_str(res.c_ml) + ", " + rational_str(res.c_lm) +
                    " differ from " + rational_str(expect));
  return res;
}

std::string Family::str() const {
  return std::string(orthogonal ? "orthogonal" : "symplectic") + " " + std::to_string(dimension);
}

Family classify_family(const Decomposition& dec) {
  validate(dec);
  Family f;
  if (dec.units.empty()) {
    f.generic = false;
    return f;
  }
  f.orthogonal = dec.units[0].order() % 2 == 1;
  bool all1 = true, all2 = true;
  for (const auto& U : dec.units) {
    f.dimension += U.order();
    all1 = all1 && U.order() == 1;
    all2 = all2 && U.order() == 2;
  }
  f.generic = all1 || all2;
  return f;
}

DiffOperator build_bracket_form(const DiffOperator& Ln, const DiffOperator& Lm, const RatFunc& a, const Rational& lambda) {
  if (!is_self_adjoint(Ln) || !is_self_adjoint(Lm)) throw MathError("build_bracket_form: inputs must be self-adjoint");
  if (a.is_zero()) throw MathError("build_bracket_form: a must be nonzero");
  DiffOperator A = op_of(a);
  DiffOperator B = Lm * A * Ln + op_of(a.inverse().scaled(lambda));
  DiffOperator Bt = adjoint(B);
  if (Ln * A * B != Bt * A * Ln) throw MathError("build_bracket_form: first intertwining relation fails");
  if (B * A * Lm != Lm * A * Bt) throw MathError("build_bracket_form: second intertwining relation fails");
  return B;
}

bool IdentityReport::all() const {
  for (const auto& [k, v] : holds)
    if (!v) return false;
  return true;
}

IdentityReport identity_suite(const DiffOperator& M, const DiffOperator& N, const DiffOperator& P, const DiffOperator& Q,
                              const RatFunc& r) {
  for (const auto* U : {&M, &N, &P, &Q})
    if (!is_self_adjoint(*U)) throw MathError("identity_suite: operators must be self-adjoint");
  if (((M.order() - N.order()) % 2) || ((M.order() - P.order()) % 2) || ((M.order() - Q.order()) % 2))
    throw MathError("identity_suite: operators must share one parity");
  DiffOperator R = op_of(r), Ri = op_of(r.inverse()), one(1);
  DiffOperator NP1 = N * P + one, PN1 = P * N + one, NM1 = N * M + one, MN1 = M * N + one;
  DiffOperator MNP = M * N * P + M + P, PNM = P * N * M + M + P;
  DiffOperator NPQ = N * P * Q + N + Q, QPN = Q * P * N + Q + N;
  DiffOperator F = M * N * P * Q + M * Q + P * Q + M * N + one;
  DiffOperator Fr = Q * P * N * M + Q * M + Q * P + N * M + one;

  IdentityReport rep;
  rep.holds["adjoint of N P + 1"] = adjoint(NP1) == PN1;
  rep.holds["adjoint of M N P + M + P"] = adjoint(MNP) == PNM;
  rep.holds["identity1"] = (R * PN1) * (MNP * R) == (R * PNM) * (NP1 * R);
  rep.holds["identity2"] = (MNP * R) * Ri * NM1 == (MN1 * Ri) * (R * PNM);
  rep.holds["identity3"] = F * PNM == MNP * Fr;
  rep.holds["identity4"] = QPN * F == Fr * NPQ;
  rep.holds["inverse modulo"] = (Ri * NM1) * (NP1 * R) == one + (Ri * N) * (MNP * R);
  rep.holds["inverse modulo adjoint"] = (NP1 * R) * (Ri * NM1) == one + (N * Ri) * (R * PNM);
  rep.holds["inverse modulo 2"] = (Ri * PNM) * (NPQ * R) == DiffOperator(-1) + (Ri * PN1) * (F * R);
  rep.holds["inverse modulo 2 adjoint"] = (NPQ * R) * (Ri * PNM) == DiffOperator(-1) + (NP1 * Ri) * (R * Fr);
  return rep;
}

std::string write_document(const Decomposition& dec, const DocumentInfo& info) {
  validate(dec);
  Family fam = classify_family(dec);
  std::ostringstream os;
  os << "units: " << dec.units.size() << "\n";
  for (std::size_t k = 0; k < dec.units.size(); ++k) {
    os << "unit." << k + 1 << ".order: " << dec.units[k].order() << "\n";
    os << "unit." << k + 1 << ".op: " << dec.units[k].exact_str() << "\n";
    os << "unit." << k + 1 << ".cleared: " << dec.units[k].str() << "\n";
  }
  os << "r: " << dec.r.str() << "\n";
  os << "family: " << fam.str() << "\n";
  os << "generic: " << (fam.generic ? "true" : "false") << "\n";
  os << "fibonacci_terms: " << fibonacci_count(static_cast<int>(dec.units.size())) << "\n";
  os << "certificate.self_adjoint_units: true\n";
  os << "certificate.same_parity: true\n";
  for (const auto& [k, v] : info.extra) os << k << ": " << v << "\n";
  return os.str();
}

std::map<std::string, std::string> read_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto colon = t.find(':');
    if (colon == std::string::npos) throw ParseError("document line " + std::to_string(lineno) + ": expected 'key: value'");
    kv[trim(t.substr(0, colon))] = trim(t.substr(colon + 1));
  }
  return kv;
}

Decomposition read_document(const std::string& text) {
  auto kv = read_key_values(text);
  auto get = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw ParseError("document: missing key '" + k + "'");
    return it->second;
  };
  long n;
  try {
    n = std::stol(get("units"));
  } catch (const std::logic_error&) {
    throw ParseError("document: 'units' must be an integer");
  }
  if (n < 0) throw ParseError("document: negative unit count");
  Decomposition dec;
  for (long k = 1; k <= n; ++k) {
    std::string key = "unit." + std::to_string(k) + ".op";
    if (!kv.count(key)) key = "unit." + std::to_string(k) + ".cleared";
    dec.units.push_back(parse_operator(get(key)));
  }
  dec.r = kv.count("r") ? parse_ratfunc(kv["r"]) : RatFunc(1);
  validate(dec);
  return dec;
}

Decomposition random_decomposition(const std::vector<int>& orders, std::uint64_t seed, bool with_r) {
  std::mt19937_64 g(seed);
  Decomposition d;
  for (int q : orders) d.units.push_back(random_self_adjoint(q, 1 + static_cast<int>(g() % 2), g()));
  if (with_r) {
    Poly n = random_poly(g, 1), den = random_poly(g, 1);
    d.r = gcd(n, den).degree() > 0 ? RatFunc(n) : RatFunc(n, den);
  }
  return d;
}

}  // namespace adjtower

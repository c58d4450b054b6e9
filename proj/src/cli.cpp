#include "adjtower/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "adjtower/diagonal.hpp"
#include "adjtower/fixtures.hpp"
#include "adjtower/homomorphisms.hpp"
#include "adjtower/linalg.hpp"
#include "adjtower/parser.hpp"
#include "adjtower/powers.hpp"
#include "adjtower/ratsol.hpp"
#include "adjtower/selfadjoint.hpp"
#include "adjtower/tower.hpp"

namespace adjtower::cli {

namespace {

using json = nlohmann::ordered_json;

// Collects the result of one command; rendered as "key: value" lines or as
// one JSON object.
class Output {
 public:
  enum class Style { Field, List, Bare, Lines };

  void field(const std::string& k, json v) { items_.push_back({k, std::move(v), Style::Field}); }
  void list(const std::string& k, const std::vector<std::string>& v) { items_.push_back({k, json(v), Style::List}); }
  void bare(const std::string& k, const std::string& v) { items_.push_back({k, json(v), Style::Bare}); }
  void lines(const std::string& k, const std::vector<std::string>& v) { items_.push_back({k, json(v), Style::Lines}); }

  void document(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      auto colon = line.find(": ");
      if (colon == std::string::npos) continue;
      field(line.substr(0, colon), line.substr(colon + 2));
    }
  }

  void render(std::ostream& out, bool as_json) const {
    if (as_json) {
      json j = json::object();
      for (const auto& it : items_) j[it.key] = it.value;
      out << j.dump(2) << "\n";
      return;
    }
    auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    for (const auto& it : items_) {
      switch (it.style) {
        case Style::Field:
          out << it.key << ": " << text(it.value) << "\n";
          break;
        case Style::List:
          for (std::size_t i = 0; i < it.value.size(); ++i) out << it.key << "." << i + 1 << ": " << text(it.value[i]) << "\n";
          break;
        case Style::Bare:
          out << text(it.value) << "\n";
          break;
        case Style::Lines:
          for (const auto& v : it.value) out << text(v) << "\n";
          break;
      }
    }
  }

 private:
  struct Item {
    std::string key;
    json value;
    Style style;
  };
  std::vector<Item> items_;
};

struct Context {
  std::istream& in;
  bool exact = false;
  bool stdin_used = false;

  std::string slurp_stdin() {
    if (stdin_used) throw ParseError("standard input can be read only once");
    stdin_used = true;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  // "-" is standard input, "@path" a file, "fixture:name" a fixture payload;
  // anything else is inline text, or a path when `path` is set.
  std::string resolve(const std::string& arg, bool path = false) {
    if (arg == "-") return slurp_stdin();
    if (arg.rfind("fixture:", 0) == 0) {
      Fixture f = load_fixture(arg.substr(8));
      if (!f.printed()) throw FixtureError("fixture " + f.name + " has no payload");
      return f.text;
    }
    if (arg.rfind("@", 0) == 0) return read_file(arg.substr(1));
    return path ? read_file(arg) : arg;
  }

  static std::string read_file(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw ParseError("cannot read file: " + p);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
  }

  DiffOperator op(const std::string& arg) { return parse_operator(resolve(arg)); }

  std::string fmt(const DiffOperator& L) const { return exact ? L.exact_str() : L.str(); }
};

std::string join_orders(const std::vector<DiffOperator>& units) {
  std::string s;
  for (std::size_t i = 0; i < units.size(); ++i) s += (i ? "," : "") + std::to_string(units[i].order());
  return s;
}

bool looks_like_document(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (line.rfind("operator:", 0) == 0) return true;
  return false;
}

// primitive integer form
std::string poly_str(const Poly& p) { return p.is_zero() ? "0" : DiffOperator(RatFunc(p)).str(); }

void power_fields(Output& o, const Context& ctx, const PowerResult& p) {
  o.field("operator", ctx.fmt(p.op));
  o.field("order", p.op.order());
  o.field("full_dimension", p.full_dim);
  o.field("drop", p.drop);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear differential operators over Q(x): adjoints, self-adjoint towers, powers, rational solutions, "
               "diagonals and guessing",
               "adjtower"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false, exact = false;
  unsigned nthreads = 0;
  app.add_flag("--json", as_json, "Print one JSON object instead of key: value lines");
  app.add_flag("--exact", exact, "Print rational-function coefficients as stored instead of the cleared form");
  app.add_option("--threads", nthreads, "Worker threads for modular linear algebra (0: default)");

  std::string a1, a2, side = "right", by, inter, den, method = "expand";
  int order = 0, seed = 0, deg = 1, m = 2, cap = kDefaultPowerCap, max_power = 2, max_deg = 0, margin = kGuessMargin;
  int num_deg = -1, terms = 10, n_random = 50;
  bool formal = false, operator_only = false;

  auto* c_adj = app.add_subcommand("adjoint", "Adjoint (-1)^n L* of an operator");
  c_adj->add_option("op", a1, "Operator")->required();
  c_adj->add_flag("--formal", formal, "Formal adjoint L* without the sign");

  auto* c_mul = app.add_subcommand("mul", "Product A*B");
  c_mul->add_option("a", a1)->required();
  c_mul->add_option("b", a2)->required();

  auto* c_div = app.add_subcommand("divide", "Euclidean division: A = Q*B + R (right) or A = B*Q + R (left)");
  c_div->add_option("a", a1)->required();
  c_div->add_option("b", a2)->required();
  c_div->add_option("--side", side)->check(CLI::IsMember({"right", "left"}));

  auto* c_sa = app.add_subcommand("selfadjoint", "Random self-adjoint operator");
  c_sa->add_option("--order", order)->required()->check(CLI::Range(1, 1000000));
  c_sa->add_option("--seed", seed)->required()->check(CLI::NonNegativeNumber);
  c_sa->add_option("--deg", deg, "Coefficient degree")->check(CLI::NonNegativeNumber);

  auto* c_build = app.add_subcommand("build", "Build the operator of a decomposition document, with its tower trace");
  c_build->add_option("doc", a1, "Decomposition document (path, - or @path)")->required();
  c_build->add_flag("--operator-only", operator_only, "Print only the operator");

  auto* c_ext = app.add_subcommand("extract", "Decomposition of an operator from an intertwiner");
  c_ext->add_option("op", a1, "Operator, or the output of build")->required();
  c_ext->add_option("--intertwiner", inter, "Intertwiner X (searched for when absent)");
  c_ext->add_option("--max-power", max_power, "Search denominator lc(L)^k")->check(CLI::NonNegativeNumber);
  c_ext->add_option("--max-deg", max_deg, "Search numerator degree cap (0: automatic)")->check(CLI::NonNegativeNumber);

  auto* c_int = app.add_subcommand("intertwine", "Intertwiners X with adjoint(X) L = adjoint(L) X in a bounded ansatz");
  c_int->add_option("op", a1)->required();
  c_int->add_option("--order", order)->required()->check(CLI::NonNegativeNumber);
  c_int->add_option("--deg", deg, "Numerator degree bound")->required()->check(CLI::NonNegativeNumber);
  c_int->add_option("--den", den, "Denominator polynomial (default lc(L)^e, e = 1..3)");

  auto* c_tr = app.add_subcommand("transform", "Operator for the images T(y) of the solutions y of L");
  c_tr->add_option("op", a1)->required();
  c_tr->add_option("--by", by)->required();

  auto* c_sym = app.add_subcommand("sympow", "Symmetric power");
  c_sym->add_option("op", a1)->required();
  c_sym->add_option("--m", m)->check(CLI::Range(1, 1000000));
  c_sym->add_option("--cap", cap, "Largest module dimension")->check(CLI::Range(1, 1000000));

  auto* c_ext2 = app.add_subcommand("extpow", "Exterior power");
  c_ext2->add_option("op", a1)->required();
  c_ext2->add_option("--m", m)->check(CLI::Range(1, 1000000));
  c_ext2->add_option("--cap", cap, "Largest module dimension")->check(CLI::Range(1, 1000000));

  auto* c_rs = app.add_subcommand("ratsols", "Rational solutions");
  c_rs->add_option("op", a1)->required();
  c_rs->add_option("--num-deg", num_deg, "Numerator degree bound (default automatic)")->check(CLI::NonNegativeNumber);
  c_rs->add_option("--den", den, "Denominator (default automatic)");

  auto* c_diag = app.add_subcommand("diag", "Diagonal of a rational function of x, y, z as a series");
  a2 = "fixture:generic";
  c_diag->add_option("r", a2, "Rational function (default fixture:generic)");
  c_diag->add_option("--method", method)->check(CLI::IsMember({"expand", "multinomial", "both"}));
  c_diag->add_option("--terms", terms)->check(CLI::NonNegativeNumber);

  auto* c_guess = app.add_subcommand("guess", "Operator of given order and degree annihilating a series");
  c_guess->add_option("series", a1, "Series file (path, - or fixture:name)")->required();
  c_guess->add_option("--order", order)->required()->check(CLI::NonNegativeNumber);
  c_guess->add_option("--deg", deg)->required()->check(CLI::NonNegativeNumber);
  c_guess->add_option("--margin", margin, "Equations held out for checking")->check(CLI::NonNegativeNumber);

  auto* c_cls = app.add_subcommand("classify", "Family and genericity of a decomposition document");
  c_cls->add_option("doc", a1)->required();

  auto* c_vi = app.add_subcommand("verify-identities", "Operator identities and inversion relations on random data");
  c_vi->add_option("--n-random", n_random)->check(CLI::Range(1, 1000000));
  c_vi->add_option("--seed", seed)->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (nthreads) set_threads(nthreads);
  Context ctx{in};
  ctx.exact = exact;
  Output o;
  int status = 0;
  try {
    if (c_adj->parsed()) {
      auto L = ctx.op(a1);
      o.bare("operator", ctx.fmt(formal ? formal_adjoint(L) : adjoint(L)));
    } else if (c_mul->parsed()) {
      o.bare("operator", ctx.fmt(ctx.op(a1) * ctx.op(a2)));
    } else if (c_div->parsed()) {
      auto A = ctx.op(a1), B = ctx.op(a2);
      Division d = side == "right" ? right_divide(A, B) : left_divide(A, B);
      o.field("quotient", ctx.fmt(d.q));
      o.field("remainder", ctx.fmt(d.r));
    } else if (c_sa->parsed()) {
      o.bare("operator", ctx.fmt(random_self_adjoint(order, deg, static_cast<std::uint64_t>(seed))));
    } else if (c_build->parsed()) {
      Decomposition dec = read_document(ctx.resolve(a1, true));
      TowerTrace t = build(dec);
      std::size_t N = dec.units.size();
      if (operator_only) {
        o.bare("operator", ctx.fmt(t.L[N]));
      } else {
        o.field("operator", ctx.fmt(t.L[N]));
        if (N >= 1) o.field("intertwiner", ctx.fmt(t.L[N - 1]));
        o.field("order", t.L[N].order());
        for (std::size_t k = 0; k <= N; ++k) o.field("L[" + std::to_string(k) + "]", ctx.fmt(t.L[k]));
        for (const auto& s : t.steps) {
          std::string p = "step[" + std::to_string(s.k) + "].";
          o.field(p + "quotient_self_adjoint", s.quotient_self_adjoint);
          o.field(p + "remainder_order", s.remainder_order);
        }
        o.field("chain", verify_intertwining_chain(t).has_value() ? "broken" : "verified");
        o.field("expansion_terms", static_cast<long>(expand_terms(static_cast<int>(N)).size()));
        o.field("expansion_matches", expand_operator(dec) == t.L[N]);
      }
    } else if (c_ext->parsed()) {
      std::string text = ctx.resolve(a1);
      DiffOperator L, X;
      bool have_x = false;
      if (looks_like_document(text)) {
        auto kv = read_key_values(text);
        L = parse_operator(kv.at("operator"));
        if (kv.count("intertwiner")) {
          X = parse_operator(kv.at("intertwiner"));
          have_x = true;
        }
      } else {
        L = parse_operator(text);
      }
      if (!inter.empty()) {
        X = ctx.op(inter);
        have_x = true;
      }
      Extraction ex;
      if (have_x) {
        if (!check_intertwiner(L, X)) throw MathError("extract: X does not satisfy adjoint(X) L = adjoint(L) X");
        ex = extract(L, X);
      } else {
        // a member of top order, shifted by lower-order members when the
        // first choice gives a reducible tower
        auto space = find_intertwiner_space(L, max_power, max_deg);
        if (space.basis.empty()) throw NotFound("no intertwiner found within the search bounds");
        int k = 0;
        for (const auto& B : space.basis) k = std::max(k, B.order());
        DiffOperator low;
        std::vector<DiffOperator> top;
        for (const auto& B : space.basis) {
          if (B.order() == k)
            top.push_back(B);
          else
            low += B;
        }
        std::vector<DiffOperator> tries;
        for (const auto& B : top) {
          tries.push_back(B);
          if (!low.is_zero())
            for (long c : {1, -1, 3, -3}) tries.push_back(B + low.scaled(Rational(c)));
        }
        bool done = false;
        for (std::size_t i = 0; i < tries.size() && !done; ++i) {
          try {
            ex = extract(L, tries[i]);
            done = true;
          } catch (const ReducibleTower&) {
            if (i + 1 == tries.size()) throw;
          }
        }
      }
      bool quotients = std::all_of(ex.trace.steps.begin(), ex.trace.steps.end(),
                                   [](const TowerStep& s) { return s.quotient_self_adjoint; });
      DocumentInfo info;
      info.extra["certificate.quotients_self_adjoint"] = quotients ? "true" : "false";
      info.extra["certificate.intertwining_chain"] = verify_intertwining_chain(ex.trace) ? "broken" : "verified";
      info.extra["certificate.rebuilds_input"] = build_operator(ex.dec) == L ? "true" : "false";
      o.document(write_document(ex.dec, info));
    } else if (c_int->parsed()) {
      AnsatzBounds b;
      b.order = order;
      b.numerator_degree = deg;
      if (!den.empty()) b.denominator = parse_poly(ctx.resolve(den));
      auto r = intertwiner_search(ctx.op(a1), b);
      std::vector<std::string> xs;
      for (const auto& X : r.basis) xs.push_back(ctx.fmt(X));
      o.field("denominator", poly_str(r.denominator));
      o.field("dimension", static_cast<long>(xs.size()));
      o.list("X", xs);
      if (xs.empty()) status = 1;
    } else if (c_tr->parsed()) {
      auto t = transform_solutions(ctx.op(a1), ctx.op(by));
      o.field("operator", ctx.fmt(t.ltilde));
      o.field("cofactor", ctx.fmt(t.cofactor));
    } else if (c_sym->parsed()) {
      power_fields(o, ctx, sym_power(ctx.op(a1), m, cap));
    } else if (c_ext2->parsed()) {
      power_fields(o, ctx, ext_power(ctx.op(a1), m, cap));
    } else if (c_rs->parsed()) {
      RatSolBounds b;
      if (num_deg >= 0) b.num_degree = num_deg;
      if (!den.empty()) b.denominator = parse_poly(ctx.resolve(den));
      auto r = rational_solutions(ctx.op(a1), b);
      std::vector<std::string> sols;
      for (const auto& f : r.basis) sols.push_back(f.str());
      o.field("denominator", poly_str(r.denominator));
      o.field("numerator_degree", r.num_degree);
      o.field("complete", r.complete);
      o.field("dimension", static_cast<long>(sols.size()));
      o.list("solution", sols);
      if (sols.empty()) status = 1;
    } else if (c_diag->parsed()) {
      auto R = parse_trivariate(ctx.resolve(a2));
      auto n = static_cast<std::size_t>(terms);
      UnivariateSeries s;
      if (method == "multinomial") {
        s = diag_series_multinomial(R, n);
      } else {
        s = diag_series_expand(R, n);
        if (method == "both" && !(diag_series_multinomial(R, n) == s))
          throw MathError("diag: the two methods disagree");
      }
      std::vector<std::string> cs;
      for (const auto& v : s.c) cs.push_back(v.get_str());
      o.lines("coefficients", cs);
    } else if (c_guess->parsed()) {
      UnivariateSeries s;
      {
        std::istringstream is(ctx.resolve(a1, true));
        s = read_series(is);
      }
      auto L = guess_operator(s, order, deg, margin);
      if (!L) {
        o.field("operator", "none");
        status = 1;
      } else {
        o.field("operator", ctx.fmt(*L));
        o.field("order", L->order());
        o.field("terms", static_cast<long>(s.order()));
        o.field("held_out", margin);
        o.field("verified_terms", static_cast<long>(s.order() - static_cast<std::size_t>(L->order())));
      }
    } else if (c_cls->parsed()) {
      Decomposition dec = read_document(ctx.resolve(a1, true));
      Family f = classify_family(dec);
      o.field("family", f.str());
      o.field("group", std::string(f.orthogonal ? "SO(" : "Sp(") + std::to_string(f.dimension) + ")");
      o.field("dimension", f.dimension);
      o.field("generic", f.generic);
      o.field("unit_orders", join_orders(dec.units));
    } else if (c_vi->parsed()) {
      std::mt19937_64 g(static_cast<std::uint64_t>(seed));
      std::map<std::string, int> passed;
      int inversions = 0;
      for (int t = 0; t < n_random; ++t) {
        int base = 1 + static_cast<int>(g() % 2);
        std::vector<int> orders;
        for (int i = 0; i < 4; ++i) orders.push_back(base + 2 * static_cast<int>(g() % 4 == 0));
        Decomposition d = random_decomposition(orders, g());
        auto rep = identity_suite(d.units[0], d.units[1], d.units[2], d.units[3], d.r);
        for (const auto& [name, ok] : rep.holds) passed[name] += ok ? 1 : 0;
        int N = 2 + static_cast<int>(g() % 5);
        try {
          auto inv = inversion_check(random_decomposition(std::vector<int>(N, base), g()));
          Rational want = N % 2 == 0 ? -1 : 1;
          if (inv.c_ml == want && inv.c_lm == want) ++inversions;
        } catch (const MathError&) {
        }
      }
      bool all = inversions == n_random;
      for (const auto& [name, k] : passed) {
        o.field(name, std::to_string(k) + "/" + std::to_string(n_random));
        all = all && k == n_random;
      }
      o.field("inversion", std::to_string(inversions) + "/" + std::to_string(n_random));
      o.field("constant", "-(-1)^N");
      o.field("all", all);
      if (!all) status = 1;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const FixtureError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotFound& e) {
    err << "not found: " << e.what() << "\n";
    return 1;
  } catch (const MathError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  o.render(out, as_json);
  return status;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cin, std::cout, std::cerr);
}

}  // namespace adjtower::cli

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "adjtower/fixtures.hpp"
#include "doctest.h"

using namespace adjtower;

TEST_CASE("every printed fixture parses and matches its pinned metadata") {
  int printed = 0;
  for (const auto& name : fixture_names()) {
    Fixture f = load_fixture(name);
    if (!f.printed()) {
      CHECK(f.text.empty());
      continue;
    }
    ++printed;
    if (f.kind == "operator") {
      CHECK(fixture_operator(name).order() == std::stoi(f.meta.at("order")));
    } else if (f.kind == "polynomial") {
      Poly p = fixture_poly(name);
      CHECK(p.degree() == std::stoi(f.meta.at("degree")));
      CHECK(p.lc() == Rational(Integer(f.meta.at("leading"))));
      CHECK(p.coeff(0) == Rational(Integer(f.meta.at("constant"))));
      CHECK(p.coeffs().size() == static_cast<std::size_t>(p.degree() + 1));
    } else if (f.kind == "trivariate") {
      CHECK_FALSE(fixture_trivariate(name).den.is_zero());
    } else if (f.kind == "series") {
      CHECK(fixture_series(name).order() == std::stoul(f.meta.at("terms")));
    } else {
      FAIL("unexpected kind " << f.kind);
    }
  }
  CHECK(printed == 10);
}

TEST_CASE("pinned values") {
  CHECK(fixture_poly("p10").coeff(0) == Rational(Integer("-1453000612770")));
  Poly p43 = fixture_poly("p43");
  CHECK(p43.degree() == 43);
  CHECK(p43.lc() == Rational(Integer("697115132002046172480720076800000")));
  DiffOperator E2 = fixture_operator("E2");
  CHECK(E2.order() == 7);
  CHECK(from_theta(to_theta(E2)) == E2);
  CHECK(to_theta(E2).terms.at({0, 7}) == 1);
}

TEST_CASE("coefficients that are not printed are recorded as such") {
  for (const char* n : {"p70", "q70", "p81", "p93", "p123", "p164"}) {
    Fixture f = load_fixture(n);
    CHECK_FALSE(f.printed());
    CHECK_THROWS_AS(fixture_poly(n), FixtureError);
  }
}

TEST_CASE("fixture errors and directory override") {
  CHECK_THROWS_AS(load_fixture("no-such-fixture"), FixtureError);
  CHECK_THROWS_AS(fixture_poly("E2"), FixtureError);

  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "adjtower_fixture_override";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  std::string orig = fixture_dir();
  fs::copy_file(fs::path(orig) / "index.txt", tmp / "index.txt");
  fs::copy_file(fs::path(orig) / "p10.poly", tmp / "p10.poly");
  {
    std::ofstream out(tmp / "p12.poly");
    out << "x + 1\n";
  }
  setenv("ADJTOWER_FIXTURE_DIR", tmp.c_str(), 1);
  CHECK(fixture_dir() == tmp.string());
  CHECK(fixture_poly("p10").degree() == 10);
  CHECK_THROWS_AS(fixture_poly("p12"), FixtureError);  // checksum mismatch
  CHECK_THROWS_AS(fixture_poly("p21"), FixtureError);  // missing payload
  unsetenv("ADJTOWER_FIXTURE_DIR");
  CHECK(fixture_dir() == orig);
  fs::remove_all(tmp);
}

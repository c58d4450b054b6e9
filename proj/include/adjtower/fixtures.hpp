#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "adjtower/diagonal.hpp"
#include "adjtower/diffop.hpp"

namespace adjtower {

struct FixtureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Fixture {
  std::string name;
  std::string kind;   // operator, polynomial, trivariate, series, not printed
  std::string about;
  std::string text;   // payload, empty when not printed
  std::map<std::string, std::string> meta;  // pinned metadata (degree, leading, ...)
  bool printed() const { return kind != "not printed"; }
};

// ADJTOWER_FIXTURE_DIR if set, else the directory baked in at build time.
std::string fixture_dir();

std::vector<std::string> fixture_names();

// Reads the payload and checks its pinned checksum. Throws FixtureError for
// unknown names, missing payloads and checksum mismatches.
Fixture load_fixture(const std::string& name);

DiffOperator fixture_operator(const std::string& name);
Poly fixture_poly(const std::string& name);
TrivariateRational fixture_trivariate(const std::string& name);
UnivariateSeries fixture_series(const std::string& name);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace adjtower

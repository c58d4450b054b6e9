#include "adjtower/fixtures.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "adjtower/parser.hpp"

namespace adjtower {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FixtureError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

using Index = std::vector<std::pair<std::string, std::map<std::string, std::string>>>;

Index read_index() {
  std::istringstream in(slurp(fixture_dir() + "/index.txt"));
  Index idx;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      idx.push_back({line.substr(1, line.size() - 2), {}});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos || idx.empty()) throw FixtureError("malformed fixture index line: " + line);
    idx.back().second[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return idx;
}

Fixture expect(const std::string& name, const std::string& kind) {
  Fixture f = load_fixture(name);
  if (f.kind != kind) throw FixtureError("fixture " + name + " is of kind '" + f.kind + "', not " + kind);
  return f;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fixture_dir() {
  if (const char* env = std::getenv("ADJTOWER_FIXTURE_DIR"); env && *env) return env;
  return ADJTOWER_FIXTURE_DIR;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [n, kv] : read_index()) out.push_back(n);
  return out;
}

Fixture load_fixture(const std::string& name) {
  for (const auto& [n, kv] : read_index()) {
    if (n != name) continue;
    Fixture f;
    f.name = n;
    f.meta = kv;
    f.kind = kv.count("kind") ? kv.at("kind") : "";
    f.about = kv.count("about") ? kv.at("about") : "";
    f.meta.erase("kind");
    f.meta.erase("about");
    if (!f.printed()) return f;
    if (!kv.count("file")) throw FixtureError("fixture " + name + " has no payload file");
    std::string bytes = slurp(fixture_dir() + "/" + kv.at("file"));
    if (kv.count("checksum") && fnv1a_hex(bytes) != kv.at("checksum"))
      throw FixtureError("fixture " + name + ": checksum mismatch");
    f.text = trim(bytes);
    return f;
  }
  throw FixtureError("unknown fixture '" + name + "'");
}

DiffOperator fixture_operator(const std::string& name) { return parse_operator(expect(name, "operator").text); }

Poly fixture_poly(const std::string& name) { return parse_poly(expect(name, "polynomial").text); }

TrivariateRational fixture_trivariate(const std::string& name) {
  return parse_trivariate(expect(name, "trivariate").text);
}

UnivariateSeries fixture_series(const std::string& name) {
  std::istringstream in(expect(name, "series").text);
  return read_series(in);
}

}  // namespace adjtower

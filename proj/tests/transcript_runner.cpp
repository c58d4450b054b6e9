// Runs console transcripts: "$ command" lines followed by the expected
// output (stdout and stderr), with "[exit N]" appended for a nonzero exit
// status. In Markdown files only ```console blocks are read.
//
//   transcript_runner FILE BIN_DIR WORK_DIR
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct Case {
  std::string command;
  std::vector<std::string> expected;
  int line = 0;
};

std::vector<Case> parse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  bool markdown = path.size() > 3 && path.substr(path.size() - 3) == ".md";
  bool inside = !markdown;
  std::vector<Case> cases;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (markdown) {
      if (!inside && line == "```console") {
        inside = true;
        continue;
      }
      if (inside && line == "```") {
        inside = false;
        continue;
      }
    }
    if (!inside) continue;
    if (line.rfind("$ ", 0) == 0) {
      cases.push_back({line.substr(2), {}, n});
    } else if (!cases.empty()) {
      cases.back().expected.push_back(line);
    }
  }
  for (auto& c : cases)
    while (!c.expected.empty() && c.expected.back().empty()) c.expected.pop_back();
  return cases;
}

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char ch : s) q += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return q + "'";
}

std::vector<std::string> execute(const std::string& command, const std::string& bin, const std::string& dir) {
  std::string full = "cd " + quote(dir) + " && PATH=" + quote(bin) + ":\"$PATH\" sh -c " + quote(command) + " 2>&1";
  FILE* p = popen(full.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf;
  std::size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), k);
  int status = pclose(p);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < out.size()) {
    auto nl = out.find('\n', start);
    if (nl == std::string::npos) nl = out.size();
    lines.push_back(out.substr(start, nl - start));
    start = nl + 1;
  }
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128;
  if (code != 0) lines.push_back("[exit " + std::to_string(code) + "]");
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: transcript_runner FILE BIN_DIR WORK_DIR\n";
    return 2;
  }
  std::vector<Case> cases;
  try {
    cases = parse(argv[1]);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (cases.empty()) {
    std::cerr << "no commands in " << argv[1] << "\n";
    return 2;
  }
  int failed = 0;
  for (const auto& c : cases) {
    auto got = execute(c.command, argv[2], argv[3]);
    if (got == c.expected) {
      std::cout << "ok    line " << c.line << ": " << c.command << "\n";
      continue;
    }
    ++failed;
    std::cout << "FAIL  line " << c.line << ": " << c.command << "\n--- expected\n";
    for (const auto& l : c.expected) std::cout << l << "\n";
    std::cout << "--- got\n";
    for (const auto& l : got) std::cout << l << "\n";
  }
  std::cout << cases.size() - failed << "/" << cases.size() << " commands match\n";
  return failed ? 1 : 0;
}

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adjtower::cli {

// Exit codes: 0 success, 1 mathematical "not found" (empty search, failed
// check), 2 usage or parse errors.
int run(int argc, char** argv);

// Same, with explicit arguments (without the program name) and streams.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace adjtower::cli

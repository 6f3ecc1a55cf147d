#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace halllab::cli {

enum ExitCode : int {
  ok = 0,
  check_failed = 1,  // verification or declared expectation failed
  usage_error = 2,   // bad flags, unreadable or malformed input, preconditions
  budget_exhausted = 3,
};

/// `args` excludes the program name. Graphs are read from `in` unless an
/// input file is given; human-readable results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace halllab::cli

#pragma once

// Command-line front end. One subcommand per invocation, JSON on stdout.
// Exit codes: 0 success, 2 invalid or unsupported input (error object on
// stderr), 1 internal failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace twistbr::cli {

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace twistbr::cli

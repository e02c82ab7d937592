#pragma once

#include <ostream>
#include <span>
#include <string>

namespace rsm::cli {

/// Runs one command line (args excludes the program name). Data goes to
/// --out, or to `out` when no file is given; the one-line summary, warnings
/// and errors go to `err`. Returns 0 on success, 2 on a usage error and 1 on
/// a runtime error.
int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int dispatch(int argc, const char* const* argv);

}  // namespace rsm::cli

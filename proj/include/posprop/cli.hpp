#pragma once

// Command-line front end. Exit codes: 0 success, 1 logical negative (not a
// tautology, failed check), 2 usage or input errors.

#include <ostream>
#include <string>
#include <vector>

namespace posprop::cli {

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace posprop::cli

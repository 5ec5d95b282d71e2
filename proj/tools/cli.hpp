#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clv::cli {

// Runs one clvtool invocation. `args` excludes the program name. Returns the
// process exit code; diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clv::cli

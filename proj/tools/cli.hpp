#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace valvol::cli {

/// Runs the command line (args excludes the program name). Returns 0 on
/// success, 1 on an inequality violation or failed row, 2 on input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace valvol::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace atrid::cli {

/// Entry point behind the `atrid` binary. `args` excludes the program
/// name. Returns 0 on success, 1 on usage/input errors, 2 on numerical
/// errors (singular, breakdown, overflow), printing the error kind on
/// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace atrid::cli

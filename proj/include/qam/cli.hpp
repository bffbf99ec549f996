#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qam {

/// Runs the qam command line. `args` excludes the program name. Returns the
/// process exit status: 0 success, 1 failed certificate or suite, 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qam

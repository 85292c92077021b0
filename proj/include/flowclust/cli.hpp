#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flowclust::cli {

/// Runs the `flowclust` command line on args (without the program name).
/// Returns 0 on success, 1 on a usage or parameter error and 2 on a data
/// error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace flowclust::cli

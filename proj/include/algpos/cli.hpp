#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace algpos::cli {

/// Runs one CLI invocation. Exit codes: 0 success, 1 parse/IO error,
/// 2 negative mathematical verdict, 3 engine invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace algpos::cli

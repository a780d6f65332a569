#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace liftexp::cli {

/// Runs one CLI invocation. Returns the process exit code: 0 on success,
/// 2 on validation errors, 3 on algorithmic failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liftexp::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jetcheck {

/// Command-line entry point, callable in-process for tests. Exit codes:
/// 0 all checks pass, 1 a check fails, 2 usage or input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace jetcheck

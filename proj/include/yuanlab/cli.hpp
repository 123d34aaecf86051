#pragma once

#include <string>
#include <vector>

namespace yl {

/// Parses and runs one invocation. Exit codes: 0 success, 1 property failure,
/// 2 internal consistency failure, 3 resource bound exceeded. The environment
/// variable YUANLAB_MAX_CANDIDATES overrides the default candidate budget.
int run_cli(int argc, const char* const* argv);

/// Same, with captured streams (used by the tests). Arguments exclude the
/// program name.
int run_cli_capture(const std::vector<std::string>& args, std::string* out,
                    std::string* err);

} // namespace yl

#pragma once

#include <string>
#include <vector>

#include "yuanlab/yuan.hpp"

namespace yl {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail; // reproducing instance as JSON text when failing
};

const std::vector<std::string>& suite_names(); // diffsimple .. all

/// Runs one named invariant suite over the built-in corpus plus seeded
/// randomized twists. Unknown names raise BadParameters.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed,
                                   const EnumOptions& opts);

} // namespace yl

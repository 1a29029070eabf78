#pragma once

#include <string>
#include <vector>

namespace qfab::cli {

/// Runs one CLI invocation. Exit codes: 0 success, 1 validation error,
/// 2 runtime failure. Subcommands: vqe, haar, irreps, edgecases, gradcheck,
/// gates.
int run(const std::vector<std::string>& args);

} // namespace qfab::cli

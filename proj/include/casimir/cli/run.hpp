#pragma once

#include <iosfwd>

#include "casimir/cli/config.hpp"
#include "casimir/cli/table.hpp"

namespace casimir::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kParseError = 2, kDomainError = 3, kConvergenceError = 4 };

struct RunOutcome {
    Table table;
    std::vector<std::string> diagnostics;  // PFA warnings and per-row failures
    bool allConverged = true;
};

/// Computes the table for a parsed configuration. Rows follow sweep order
/// whatever the thread count. Rows whose evaluation fails to converge carry
/// the partial value and converged = 0. DomainError propagates.
RunOutcome runCommand(const RunConfig& cfg, int threads = 1);

}  // namespace casimir::cli

#pragma once

#include "fluorsq/cli/config.hpp"
#include "fluorsq/cli/output.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace fluorsq::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

struct RunResult {
    Table table;
    // Resolved configuration plus a "meta" block (version, timings, dressed
    // eigenvalues, diagnostics).
    nlohmann::json meta;
    std::vector<std::string> warnings;
};

// Performs the computation for a resolved config (command != figure).
// Throws ConfigError or fluorsq::Error.
RunResult compute(const RunConfig& config);

// compute() plus file emission; maps failures onto exit codes and writes
// diagnostics to err.
int run(const RunConfig& config, std::ostream& err);

// Full command-line entry point.
int main_with_args(int argc, char** argv);

} // namespace fluorsq::cli

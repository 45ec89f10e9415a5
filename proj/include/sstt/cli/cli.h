#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sstt/cli/driver.h"

namespace sstt::cli {

inline constexpr std::string_view kVersion = "0.3.0";

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

// Runs one command line (without the program name). Reports go to `out`,
// human-readable diagnostics and usage errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in);

// The `--json` document for a list of file reports.
std::string render_json(const std::vector<FileReport>& files);

}  // namespace sstt::cli

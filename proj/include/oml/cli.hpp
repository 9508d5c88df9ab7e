#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oml::cli {

enum ExitCode { kOk = 0, kDiagnosticErrors = 1, kUsage = 2 };

/// Run `omlc` with `args` (without the program name). Artifacts and JSON go
/// to `out`, text diagnostics and messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oml::cli

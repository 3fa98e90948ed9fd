#pragma once

namespace mesb {

/// Parses and dispatches the command line. Returns the process exit status:
/// 0 on success, 2 for configuration errors, 3 for file errors, 4 for
/// validation failures, 5 for internal errors. Failures print a one-line
/// diagnostic to stderr.
int run_cli(int argc, const char* const* argv);

} // namespace mesb

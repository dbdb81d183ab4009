#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace freefp::cli {

/// Exit codes shared by all subcommands.
enum Exit : int { ok = 0, selftest_failed = 1, usage = 2, simulation_failed = 3 };

/// Runs the command line `args` (args[0] is the program name). Results go to
/// --out when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes `content` to a sibling temporary file and renames it over `path`.
/// Returns false if the file cannot be written.
bool write_atomic(const std::string& path, const std::string& content);

} // namespace freefp::cli

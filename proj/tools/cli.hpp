#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracgreen::cli {

enum ExitCode : int { ok = 0, usage = 1, constraint = 2, tolerance = 3 };

/// Runs one subcommand. args excludes the program name. Data goes to `out`
/// unless an --out file is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads a key=value config file: '#' starts a comment, blank lines are
/// skipped, values may hold several whitespace-separated tokens.
std::vector<std::pair<std::string, std::vector<std::string>>> read_config(const std::string& path);

}  // namespace fracgreen::cli

#pragma once

// Command-line front end: option/config parsing into a RunConfig, recipe
// dispatch, CSV + metadata sidecar output, and the `verify` gate.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wnc/montecarlo.hpp"

namespace wnc::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInfeasible = 2, kVerifyFailed = 3 };

/// Bad flags, bad config file content, missing units. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  /// trace | compare | multi-slow | multi-fast | select-sweep | verify
  std::string command;
  ExperimentSpec spec;
  /// CSV destination; "-" writes the CSV to stdout without a sidecar.
  std::string output;
  bool quiet = false;
  /// Effective settings after defaults, config file and flags, in a fixed
  /// order; echoed into the sidecar and hashed.
  std::vector<std::pair<std::string, std::string>> effective;
};

/// Parses argv (argv[0] is the program name). Precedence: flags, then the
/// --config file (TOML/INI key = value), then the built-in defaults of the
/// subcommand. Throws ConfigError naming the offending field. Returns
/// an empty command when --help was requested (help text goes to `out`).
RunConfig parse_config(const std::vector<std::string>& args, std::ostream& out);

/// Runs the recipe of a non-verify command.
SweepResult run(const RunConfig& config);

/// FNV-1a 64 of the effective settings, as 16 hex digits.
std::string config_hash(const RunConfig& config);

/// Writes the CSV to `path` and `path + ".meta.json"`. Throws
/// std::runtime_error naming the path on I/O failure.
void emit_csv(const SweepResult& result, const std::string& path, const RunConfig& config);

/// True when the recipe produced nothing remotely controllable (every grid
/// point infeasible for the coding-free series).
bool all_infeasible(const RunConfig& config, const SweepResult& result);

/// Oracle cross-checks; prints one PASS/FAIL line per check. True iff all pass.
bool run_verify(const RunConfig& config, std::ostream& out);

/// Full program: parse, run, write. Returns the exit code.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wnc::cli

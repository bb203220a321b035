#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vmeas/cli/config.hpp"

namespace vmeas::cli {

const std::vector<std::string>& command_names();

struct CommandResult {
  io::Json report;
  /// Written to --out when non-empty.
  std::string csv;
  /// Every law and scan met its criterion.
  bool ok = true;
};

/// Throws ConfigError (or io::FormatError) for bad input.
CommandResult run_command(const ExperimentConfig& config);

/// The whole tool: flags, config, run, outputs. JSON report on `out`,
/// diagnostics and wall-clock on `err`. Exit status 0 iff the result is ok,
/// 1 when a criterion failed, 2 for usage and config errors.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vmeas::cli

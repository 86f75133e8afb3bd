#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace restartar {

/// Command-line values; each one overrides the matching config entry.
struct CommandArgs {
  std::vector<std::string> positional;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> samples;
  std::optional<std::vector<double>> direction;
  std::optional<std::int64_t> thin;
  std::optional<std::int64_t> replicas;
  std::optional<std::int64_t> horizon;
  std::optional<std::string> preset;
};

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitRuntime = 2, kExitVerdict = 3 };

struct CommandResult {
  int exit_code = kExitOk;
  std::string report;                                       // report.json, empty on exit 1 or 2
  std::vector<std::pair<std::string, std::string>> tables;  // file name, CSV text
  std::vector<std::string> errors;
  std::optional<std::string> output_path;  // output.path from the config
};

std::vector<std::string> command_names();

/// Parses the optional config, dispatches the subcommand and renders every
/// output in memory. Output is a pure function of (config, arguments, seed).
CommandResult run_command(const std::string& subcommand, const CommandArgs& args,
                          const std::optional<std::string>& config_text);

}  // namespace restartar

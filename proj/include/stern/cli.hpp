#pragma once

// Command-line front end. Every library operation is reachable from one
// subcommand; output is TSV (default) or a JSON envelope.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace stern::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDomain = 2,
  kResource = 3,
  kNumerical = 4,
  kVerifyFailed = 5,
};

inline constexpr int kFormatVersion = 1;

struct CommandInfo {
  std::string name;
  std::string summary;
  /// Library operations this subcommand exposes.
  std::vector<std::string> operations;
};

const std::vector<CommandInfo>& command_table();

/// args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace stern::cli

//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_CLI_CLI_HPP_
#define AISENS_CLI_CLI_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace aisens::cli {

inline constexpr const char *kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitInternal = 3,
};

/// Everything needed to rerun a command: its arguments, hashes of what it
/// read, and where it wrote.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  std::string config_hash;
  /// Path -> FNV-1a hash of the file contents.
  std::map<std::string, std::string> inputs;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string tool_version = kToolVersion;
  double wall_time_seconds = 0;
  std::vector<std::string> outputs;
  /// Command-specific facts (vocabulary hashes, counts).
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// Parses argv, runs one subcommand and returns its exit code. Normal
/// output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Convenience for tests: argv[0] is supplied.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace aisens::cli

#endif  // AISENS_CLI_CLI_HPP_

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gramframe_cli/config.hpp"

namespace gramframe::cli {

enum ExitCode : int { kExitPass = 0, kExitVerdictFailed = 1, kExitUsage = 2 };

const std::vector<std::string>& command_names();

struct CommandResult {
  nlohmann::json report;
  int exit_code = kExitPass;
};

/// Runs one subcommand, writing report.json and CSV files into `out_dir`.
/// Verdict failures and numerical breakdowns (IllConditioned and similar)
/// still produce a report and exit 1. Input errors throw.
CommandResult run_command(const std::string& command, const RunConfig& config,
                          const std::filesystem::path& out_dir);

/// Full entry point used by main: argument parsing, config loading, exit codes.
int run_cli(int argc, char** argv);

}  // namespace gramframe::cli

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "abtrap/report/config.hpp"

namespace abtrap::report {

enum ExitCode : int {
  kOk = 0,
  kAcceptanceFailed = 1,
  kConfigError = 2,
  kNumericalFailure = 3,
  kReductionImpossible = 4,
};

enum class Format { json, csv };

struct CommandOptions {
  std::filesystem::path out = "abtrap-out";
  Format format = Format::json;
  unsigned threads = 1;
};

const std::vector<std::string>& command_names();

/// Runs one command, writes its files under options.out and logs a summary.
/// Exceptions are mapped to exit codes; nothing escapes.
int run_command(const std::string& command, const RunConfig& config, const CommandOptions& options,
                std::ostream& log);

/// Recursive byte comparison; `detail` receives the first difference.
bool identical_trees(const std::filesystem::path& a, const std::filesystem::path& b, std::string& detail);

}  // namespace abtrap::report

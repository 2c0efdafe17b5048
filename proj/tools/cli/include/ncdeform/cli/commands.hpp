#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncdeform/cli/config.hpp"

namespace ncdeform::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;

struct CommandOptions {
  std::optional<std::string> expr;  // eval
  int samples = 100;                // flow, kinverse
};

struct CommandOutcome {
  int exit_code = kExitPass;
  nlohmann::json report;
};

const std::vector<std::string>& subcommands();

// Dispatches one suite. Input problems (unknown command, unusable config, bad expression) surface as
// ConfigError, SyntaxError or EvalError; failed checks are reported through exit_code.
CommandOutcome run_subcommand(const RunConfig& cfg, const std::string& cmd, const CommandOptions& opts = {});

}  // namespace ncdeform::cli

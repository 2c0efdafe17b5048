#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ncdeform/cli/commands.hpp"
#include "ncdeform/cli/expr.hpp"
#include "ncdeform/errors.hpp"

using namespace ncdeform::cli;
using nlohmann::json;

namespace {

bool emit(const json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream file(out);
  file << text;
  return static_cast<bool>(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numeric checks for Lie-algebraic deformations of Minkowski space", "ncdeform"};
  std::string cmd, config_path, out;
  std::optional<std::uint64_t> seed;
  CommandOptions opts;
  std::string expr;

  app.add_option("command", cmd, "Suite to run")->required()->check(CLI::IsMember(subcommands()));
  app.add_option("expr", expr, "Expression for eval, e.g. \"[xhat_0, xhat_1] |0>\"");
  app.add_option("--config", config_path, "Run configuration (JSON)")->required();
  app.add_option("--out", out, "Write the JSON report here instead of stdout");
  app.add_option("--seed", seed, "Override the configured seed");
  app.add_option("--samples", opts.samples, "Random samples for flow and kinverse")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }
  if (!expr.empty()) opts.expr = expr;

  json error = {{"command", cmd}, {"status", "config-error"}};
  try {
    RunConfig cfg = load_config(config_path);
    if (seed) cfg.seed = *seed;
    const CommandOutcome outcome = run_subcommand(cfg, cmd, opts);
    if (!emit(outcome.report, out)) {
      std::cerr << "ncdeform: cannot write '" << out << "'\n";
      return kExitConfigError;
    }
    return outcome.exit_code;
  } catch (const SyntaxError& e) {
    error["error"] = e.what();
    error["line"] = e.line();
    error["col"] = e.col();
    error["expected"] = e.expected();
  } catch (const ConfigError& e) {
    error["error"] = e.what();
  } catch (const EvalError& e) {
    error["error"] = e.what();
  } catch (const ncdeform::Error& e) {
    error["error"] = e.what();
  }
  std::cerr << "ncdeform: " << error["error"].get<std::string>() << "\n";
  emit(error, out);
  return kExitConfigError;
}

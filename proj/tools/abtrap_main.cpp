#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <thread>

#include "abtrap/report/commands.hpp"
#include "abtrap/report/config.hpp"

namespace {

unsigned env_threads() {
  const char* s = std::getenv("ABTRAP_THREADS");
  if (!s || !*s) return 0;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw std::invalid_argument("ABTRAP_THREADS must be an integer in [1, 1024]");
  return static_cast<unsigned>(v);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace abtrap::report;
  CLI::App app{"abtrap: charged particle in a trap threaded by magnetic flux"};
  std::string command, config_path, out = "abtrap-out", format = "json";
  unsigned threads = 0;
  app.add_option("command", command, "reduce | spectrum | residual-scan | gauge-check | secular | verify-all")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--config", config_path, "configuration file")->required();
  app.add_option("--out", out, "output directory");
  app.add_option("--format", format, "record format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", threads, "worker threads (default: ABTRAP_THREADS, else 1)")->check(CLI::Range(1u, 1024u));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  CommandOptions options;
  options.out = out;
  options.format = format == "csv" ? Format::csv : Format::json;
  RunConfig config;
  try {
    options.threads = threads ? threads : env_threads();
    if (options.threads == 0) options.threads = 1;
    config = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return run_command(command, config, options, std::cerr);
}

#include "commands.hpp"
#include "config.hpp"

#include <sgens/errors.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace sgens::cli;

  CLI::App app{"Schroedinger-Gibbs ensemble toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  app.add_option("--config", config_path, "configuration file (JSON)");
  app.add_option("--out", out_dir, "output directory (overrides output_dir)");
  app.add_option("--seed", seed, "random seed (overrides seed)");
  app.add_option("--threads", threads, "worker threads (overrides threads)")->check(CLI::PositiveNumber);

  const std::pair<const char*, const char*> commands[] = {
      {"eig", "lowest eigenvalues, parities and residuals"},
      {"veff", "effective potential tables"},
      {"twostate", "two-state arc tables"},
      {"fluct", "thermal dispersion of <q>"},
      {"sample", "Monte Carlo sampling of the SG measure"},
      {"canonical", "canonical atoms versus the SG dispersion"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
  } catch (const sgens::Error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  }
  if (out_dir) cfg.output_dir = *out_dir;
  if (seed) cfg.seed = *seed;
  if (threads) cfg.threads = *threads;

  const std::string name = app.get_subcommands().front()->get_name();
  return run_command(name, cfg, std::cout, std::cerr);
}

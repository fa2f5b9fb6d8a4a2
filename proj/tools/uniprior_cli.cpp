#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "uniprior/errors.hpp"
#include "uniprior/runner.hpp"

using namespace uniprior;

int main(int argc, char** argv) {
  CLI::App app{"Bayes-mixture experiment runner"};

  std::string config_path, experiment, backend, out_dir;
  std::uint64_t n = 0, seed = 0, samples = 0;
  bool quiet = false, print_defaults = false;

  app.add_option("--config", config_path, "config file, `key = value` lines with # comments");
  app.add_option("--experiment", experiment,
                 "dominance | converge-exact | converge-mc | gap | dense | diverge | "
                 "solomonoff-invariants");
  app.add_option("--n", n, "sequence length / check horizon");
  app.add_option("--seed", seed, "base seed for counter-based streams");
  app.add_option("--samples", samples, "Monte Carlo / dense path count");
  app.add_option("--backend", backend, "float | exact");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--quiet", quiet, "suppress progress output");
  app.add_flag("--print-defaults", print_defaults, "print the default config and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  /* --help exits 0, anything malformed is a config problem */
  }

  try {
    if (print_defaults) {
      std::cout << ExperimentConfig::defaults().serialize();
      return 0;
    }
    ExperimentConfig cfg =
        config_path.empty() ? ExperimentConfig{} : ExperimentConfig::parse_file(config_path);
    if (app.count("--experiment")) cfg.apply_override("experiment", experiment);
    if (app.count("--n")) cfg.n = n;
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--samples")) cfg.samples = samples;
    if (app.count("--backend")) cfg.apply_override("backend", backend);
    if (app.count("--out")) cfg.apply_override("out", out_dir);
    if (quiet) cfg.quiet = true;

    RunOutcome outcome = run_experiment(cfg, std::cout);
    return outcome.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

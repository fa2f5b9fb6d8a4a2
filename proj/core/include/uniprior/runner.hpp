#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "uniprior/csv.hpp"
#include "uniprior/experiment_config.hpp"

namespace uniprior {

struct RunOutcome {
  int exit_code = 0;  /* 0 = every summary check passed */
  std::vector<SummaryLine> summary;
  std::vector<std::string> files_written;
};

/*
 * Executes one experiment: writes <out>/<experiment>.csv plus
 * <out>/summary.txt (and programs.txt for the machine experiment), echoes
 * the summary to `log` unless the config says quiet. Bad configurations
 * throw ConfigError before anything is written; reruns with the same config
 * produce byte-identical files.
 */
RunOutcome run_experiment(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace uniprior

// experiments.hpp — one driver per subcommand, CSV + manifest emission
#pragma once

#include "cli/config.hpp"
#include "cli/output.hpp"

namespace nonrecip {

// Computes the table for cfg.experiment (validate runs its report suite
// instead), writes <experiment>.csv and manifest.json into cfg.output_dir,
// and returns the process exit status.
int run_experiment(const RunConfig& cfg);

// Tables for the individual experiments, exposed for tests.
CsvTable spectral_table(const RunConfig& cfg);
CsvTable scaling_factors_table(const RunConfig& cfg);
CsvTable transmission_table(const RunConfig& cfg);
CsvTable current_scan_table(const RunConfig& cfg);
CsvTable ndqpt_table(const RunConfig& cfg);
CsvTable markovian_compare_table(const RunConfig& cfg);

// Powers of two from n_min through n_max (n_max kept only when reached).
std::vector<int> size_grid(int n_min, int n_max);

} // namespace nonrecip

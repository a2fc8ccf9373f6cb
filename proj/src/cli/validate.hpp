// validate.hpp — randomized self-check suite behind the validate subcommand
#pragma once

#include "cli/config.hpp"

namespace nonrecip {

// Runs the oracle suite (sizes up to cfg.params.n_sites, cfg.trials draws per
// check, seeded by cfg.seed), prints one report line per check, writes
// validate.csv into cfg.output_dir, and returns 0 iff every check passed.
int run_validate(const RunConfig& cfg);

} // namespace nonrecip

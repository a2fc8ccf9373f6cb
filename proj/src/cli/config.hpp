// config.hpp — run configuration, presets, and command-line/file parsing
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nonrecip/model.hpp"
#include "nonrecip/transport.hpp"

namespace nonrecip {

enum class Experiment {
    spectral,
    scaling_factors,
    transmission,
    current_scan,
    ndqpt,
    markovian_compare,
    validate,
};

std::string experiment_name(Experiment e);  // subcommand spelling, hyphenated

struct RunConfig {
    Experiment experiment{Experiment::spectral};
    std::string preset;               // resolved preset name, empty if none

    ModelParams params;
    std::string sigma_model{"constant"};  // constant | frozen_gamma
    double gamma_const{0.0};              // frozen Gamma; 0 means g_b^2/g
    double mu_d{0.0};                     // drive chemical potential

    int k_points{401};
    double omega_min{-3.0};
    double omega_max{3.0};
    int omega_points{801};

    double mu_min{-1.5};
    double mu_max{-0.5};
    int mu_points{51};

    int n_min{128};
    int n_max{4096};

    int trials{20};
    unsigned seed{7};

    std::string output_dir{"."};
};

bool operator==(const RunConfig& a, const RunConfig& b);

// Self-energy model selected by the config (frozen Gamma falls back to
// g_b^2/g when gamma_const is unset).
SelfEnergy self_energy(const RunConfig& cfg);

// Leads with both reservoirs empty; experiments assign mu_d per direction.
LeadConfig lead_config(const RunConfig& cfg);

// nullopt means help/usage was printed and the caller should exit 0.
// Throws config_error (exit 2) on unknown keys, malformed values, or a
// preset used under the wrong subcommand. args excludes the program name.
std::optional<RunConfig> parse_config(std::vector<std::string> args);

// `key = value` lines applied onto cfg; '#' starts a comment.
void apply_config_file(RunConfig& cfg, const std::string& path);

// Single `key = value` assignment; throws config_error naming a bad key.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

// Complete key -> value state of a config, parseable by apply_key; the
// manifest embeds this map so any run can be reproduced from its manifest.
std::map<std::string, std::string> config_parameters(const RunConfig& cfg);

} // namespace nonrecip

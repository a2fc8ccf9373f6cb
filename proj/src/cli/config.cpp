// config.cpp — presets, key registry, layered flag/file parsing
#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <utility>

#include <CLI11.hpp>

namespace nonrecip {

namespace {

constexpr double kTwoPiOverThree = 2.0943951023931953;  // 2*pi/3

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(value, &pos);
        if (pos != value.size())
            throw config_error("bad value for key '" + key + "': " + value);
        return d;
    } catch (const config_error&) {
        throw;
    } catch (const std::exception&) {
        throw config_error("bad value for key '" + key + "': " + value);
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size())
            throw config_error("bad value for key '" + key + "': " + value);
        return v;
    } catch (const config_error&) {
        throw;
    } catch (const std::exception&) {
        throw config_error("bad value for key '" + key + "': " + value);
    }
}

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r\n");
    if (from == std::string::npos) return {};
    const auto to = s.find_last_not_of(" \t\r\n");
    return s.substr(from, to - from + 1);
}

// strong-coupling parameter set shared by most panels
void strong_base(RunConfig& c) {
    c.params = ModelParams{};
    c.params.g_b = 0.3;
    c.params.kappa = 0.25;
    c.params.delta_b = -0.5;
    c.params.phi = kTwoPiOverThree;
    c.sigma_model = "constant";
    c.gamma_const = 0.0;
}

void apply_preset(RunConfig& c, const std::string& name) {
    const RunConfig defaults;
    const Experiment keep = c.experiment;
    c = defaults;
    c.experiment = keep;
    c.preset = name;
    if (name == "fig2a" || name == "fig2b") {
        c.experiment = Experiment::spectral;
        strong_base(c);
        c.k_points = 401;
        c.omega_min = -3.0;
        c.omega_max = 3.0;
        c.omega_points = 801;
        if (name == "fig2b") {
            c.sigma_model = "frozen_gamma";
            c.gamma_const = 0.09;
        }
    } else if (name == "fig2c") {
        c.experiment = Experiment::scaling_factors;
        strong_base(c);
        c.omega_min = -4.0;
        c.omega_max = 4.0;
        c.omega_points = 2000;
    } else if (name == "fig2d") {
        c.experiment = Experiment::transmission;
        strong_base(c);
        c.params.g_b = 0.1;
        c.params.kappa = 0.1;
        c.params.delta_b = -1.0;
        c.params.gamma = 0.5;
        c.params.n_sites = 30;
        c.omega_min = -3.0;
        c.omega_max = 3.0;
        c.omega_points = 2401;
    } else if (name == "fig2e") {
        c.experiment = Experiment::current_scan;
        strong_base(c);
        c.params.gamma = 0.5;
        c.params.beta = 100.0;
        c.mu_d = -0.9;
        c.n_min = 128;
        c.n_max = 4096;
    } else if (name == "fig2f") {
        c.experiment = Experiment::ndqpt;
        strong_base(c);
        c.params.gamma = 0.5;
        c.params.beta = 100.0;
        c.params.n_sites = 1024;
        c.mu_min = -1.5;
        c.mu_max = -0.5;
        c.mu_points = 51;
    } else if (name == "fig3") {
        c.experiment = Experiment::markovian_compare;
        strong_base(c);
        c.sigma_model = "frozen_gamma";
        c.gamma_const = 0.09;
        c.params.gamma = 0.5;
        c.params.beta = 10.0;
        c.mu_d = -1.0;
        c.n_min = 8;
        c.n_max = 1024;
    } else {
        throw config_error("unknown preset: " + name);
    }
}

Experiment preset_experiment(const std::string& name) {
    RunConfig c;
    apply_preset(c, name);
    return c.experiment;
}

void default_setup(RunConfig& c, Experiment e) {
    c.experiment = e;
    switch (e) {
        case Experiment::spectral: apply_preset(c, "fig2a"); break;
        case Experiment::scaling_factors: apply_preset(c, "fig2c"); break;
        case Experiment::transmission: apply_preset(c, "fig2d"); break;
        case Experiment::current_scan: apply_preset(c, "fig2e"); break;
        case Experiment::ndqpt: apply_preset(c, "fig2f"); break;
        case Experiment::markovian_compare: apply_preset(c, "fig3"); break;
        case Experiment::validate:
            strong_base(c);
            c.params.gamma = 0.5;
            c.params.n_sites = 64;
            c.trials = 20;
            c.seed = 7;
            break;
    }
    c.preset.clear();
}

void check_grids(const RunConfig& c) {
    if (c.k_points < 2) throw config_error("bad value for key 'k_points'");
    if (c.omega_points < 2) throw config_error("bad value for key 'omega_points'");
    if (c.mu_points < 2) throw config_error("bad value for key 'mu_points'");
    if (!(c.omega_max > c.omega_min))
        throw config_error("omega_max must exceed omega_min");
    if (!(c.mu_max > c.mu_min)) throw config_error("mu_max must exceed mu_min");
    if (c.n_min < 2 || c.n_max < c.n_min)
        throw config_error("need 2 <= n_min <= n_max");
    if (c.trials < 1) throw config_error("bad value for key 'trials'");
    if (c.gamma_const < 0.0) throw config_error("bad value for key 'gamma_const'");
    if (c.sigma_model != "constant" && c.sigma_model != "frozen_gamma")
        throw config_error("bad value for key 'sigma_model' (constant|frozen_gamma)");
}

} // namespace

std::string experiment_name(Experiment e) {
    switch (e) {
        case Experiment::spectral: return "spectral";
        case Experiment::scaling_factors: return "scaling-factors";
        case Experiment::transmission: return "transmission";
        case Experiment::current_scan: return "current-scan";
        case Experiment::ndqpt: return "ndqpt";
        case Experiment::markovian_compare: return "markovian-compare";
        case Experiment::validate: return "validate";
    }
    return {};
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    const auto& p = a.params;
    const auto& q = b.params;
    return a.experiment == b.experiment && a.preset == b.preset &&
           p.g == q.g && p.g_b == q.g_b && p.phi == q.phi &&
           p.delta_c == q.delta_c && p.delta_b == q.delta_b &&
           p.kappa == q.kappa && p.gamma == q.gamma &&
           p.n_sites == q.n_sites && p.beta == q.beta && p.eta == q.eta &&
           a.sigma_model == b.sigma_model && a.gamma_const == b.gamma_const &&
           a.mu_d == b.mu_d && a.k_points == b.k_points &&
           a.omega_min == b.omega_min && a.omega_max == b.omega_max &&
           a.omega_points == b.omega_points && a.mu_min == b.mu_min &&
           a.mu_max == b.mu_max && a.mu_points == b.mu_points &&
           a.n_min == b.n_min && a.n_max == b.n_max && a.trials == b.trials &&
           a.seed == b.seed && a.output_dir == b.output_dir;
}

SelfEnergy self_energy(const RunConfig& cfg) {
    if (cfg.sigma_model == "frozen_gamma") {
        const double gc =
            (cfg.gamma_const > 0.0) ? cfg.gamma_const : markovian_gamma(cfg.params);
        return SelfEnergy::frozen_gamma(gc);
    }
    return SelfEnergy::constant_from(cfg.params);
}

LeadConfig lead_config(const RunConfig& cfg) {
    LeadConfig lc;
    lc.beta = cfg.params.beta;
    lc.gamma = cfg.params.gamma;
    return lc;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto& p = cfg.params;
    if (key == "g") p.g = parse_double(key, value);
    else if (key == "g_b") p.g_b = parse_double(key, value);
    else if (key == "phi") p.phi = parse_double(key, value);
    else if (key == "delta_c") p.delta_c = parse_double(key, value);
    else if (key == "delta_b") p.delta_b = parse_double(key, value);
    else if (key == "kappa") p.kappa = parse_double(key, value);
    else if (key == "gamma") p.gamma = parse_double(key, value);
    else if (key == "beta") p.beta = parse_double(key, value);
    else if (key == "eta") p.eta = parse_double(key, value);
    else if (key == "n_sites" || key == "n") {
        const long v = parse_long(key, value);
        if (v < 2 || v > 100000000) throw config_error("bad value for key 'n'");
        p.n_sites = static_cast<int>(v);
    } else if (key == "sigma_model") cfg.sigma_model = value;
    else if (key == "gamma_const") cfg.gamma_const = parse_double(key, value);
    else if (key == "mu_d") cfg.mu_d = parse_double(key, value);
    else if (key == "k_points") cfg.k_points = static_cast<int>(parse_long(key, value));
    else if (key == "omega_min") cfg.omega_min = parse_double(key, value);
    else if (key == "omega_max") cfg.omega_max = parse_double(key, value);
    else if (key == "omega_points") cfg.omega_points = static_cast<int>(parse_long(key, value));
    else if (key == "mu_min") cfg.mu_min = parse_double(key, value);
    else if (key == "mu_max") cfg.mu_max = parse_double(key, value);
    else if (key == "mu_points") cfg.mu_points = static_cast<int>(parse_long(key, value));
    else if (key == "n_min") cfg.n_min = static_cast<int>(parse_long(key, value));
    else if (key == "n_max") cfg.n_max = static_cast<int>(parse_long(key, value));
    else if (key == "trials") cfg.trials = static_cast<int>(parse_long(key, value));
    else if (key == "seed") {
        const long v = parse_long(key, value);
        if (v < 0) throw config_error("bad value for key 'seed'");
        cfg.seed = static_cast<unsigned>(v);
    } else if (key == "output_dir") cfg.output_dir = value;
    else throw config_error("unknown key: " + key);
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
        apply_key(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
}

std::map<std::string, std::string> config_parameters(const RunConfig& cfg) {
    const auto& p = cfg.params;
    return {
        {"g", fmt_double(p.g)},
        {"g_b", fmt_double(p.g_b)},
        {"phi", fmt_double(p.phi)},
        {"delta_c", fmt_double(p.delta_c)},
        {"delta_b", fmt_double(p.delta_b)},
        {"kappa", fmt_double(p.kappa)},
        {"gamma", fmt_double(p.gamma)},
        {"beta", fmt_double(p.beta)},
        {"eta", fmt_double(p.eta)},
        {"n_sites", std::to_string(p.n_sites)},
        {"sigma_model", cfg.sigma_model},
        {"gamma_const", fmt_double(cfg.gamma_const)},
        {"mu_d", fmt_double(cfg.mu_d)},
        {"k_points", std::to_string(cfg.k_points)},
        {"omega_min", fmt_double(cfg.omega_min)},
        {"omega_max", fmt_double(cfg.omega_max)},
        {"omega_points", std::to_string(cfg.omega_points)},
        {"mu_min", fmt_double(cfg.mu_min)},
        {"mu_max", fmt_double(cfg.mu_max)},
        {"mu_points", std::to_string(cfg.mu_points)},
        {"n_min", std::to_string(cfg.n_min)},
        {"n_max", std::to_string(cfg.n_max)},
        {"trials", std::to_string(cfg.trials)},
        {"seed", std::to_string(cfg.seed)},
        {"output_dir", cfg.output_dir},
    };
}

std::optional<RunConfig> parse_config(std::vector<std::string> args) {
    CLI::App app{"nonrecip: nonreciprocal non-Markovian lattice transport"};
    app.require_subcommand(0, 1);

    static const char* keys[] = {
        "g", "g_b", "phi", "delta_c", "delta_b", "kappa", "gamma", "beta",
        "eta", "n", "sigma_model", "gamma_const", "mu_d", "k_points",
        "omega_min", "omega_max", "omega_points", "mu_min", "mu_max",
        "mu_points", "n_min", "n_max", "trials", "seed", "output_dir",
    };

    struct SubState {
        Experiment experiment;
        std::string preset;
        std::string config_file;
        std::vector<std::pair<std::string, std::string>> assignments;
    };
    std::vector<std::unique_ptr<SubState>> states;

    const Experiment order[] = {
        Experiment::spectral,        Experiment::scaling_factors,
        Experiment::transmission,    Experiment::current_scan,
        Experiment::ndqpt,           Experiment::markovian_compare,
        Experiment::validate,
    };
    for (Experiment e : order) {
        auto st = std::make_unique<SubState>();
        st->experiment = e;
        CLI::App* sub = app.add_subcommand(experiment_name(e));
        sub->add_option("--preset", st->preset,
                        "parameter preset (fig2a..fig2f, fig3)");
        sub->add_option("--config", st->config_file,
                        "key = value parameter file");
        for (const char* k : keys) {
            const std::string key = k;
            sub->add_option_function<std::string>(
                "--" + key,
                [state = st.get(), key](const std::string& v) {
                    state->assignments.emplace_back(key, v);
                },
                "set " + key);
        }
        states.push_back(std::move(st));
    }

    if (args.empty()) {
        std::cout << app.help();
        return std::nullopt;
    }

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw config_error(e.what());
    }

    const SubState* st = nullptr;
    for (const auto& s : states)
        if (app.get_subcommand(experiment_name(s->experiment))->parsed())
            st = s.get();
    if (st == nullptr) {
        std::cout << app.help();
        return std::nullopt;
    }

    RunConfig cfg;
    default_setup(cfg, st->experiment);
    if (!st->preset.empty()) {
        if (preset_experiment(st->preset) != st->experiment)
            throw config_error("preset '" + st->preset + "' belongs to the '" +
                               experiment_name(preset_experiment(st->preset)) +
                               "' subcommand");
        apply_preset(cfg, st->preset);
    }
    if (!st->config_file.empty()) apply_config_file(cfg, st->config_file);
    for (const auto& [key, value] : st->assignments) apply_key(cfg, key, value);

    try {
        validate(cfg.params);
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    check_grids(cfg);
    return cfg;
}

} // namespace nonrecip

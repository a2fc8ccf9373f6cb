// experiments.cpp — experiment drivers behind the CLI subcommands
#include "cli/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include "cli/validate.hpp"
#include "nonrecip/analysis.hpp"
#include "nonrecip/momentum.hpp"
#include "nonrecip/parallel.hpp"
#include "nonrecip/transport.hpp"

namespace nonrecip {

std::vector<int> size_grid(int n_min, int n_max) {
    std::vector<int> ns;
    for (long n = n_min; n <= n_max; n *= 2) ns.push_back(static_cast<int>(n));
    return ns;
}

CsvTable spectral_table(const RunConfig& cfg) {
    const SelfEnergy s = self_energy(cfg);
    const std::vector<double> ks = linspace(-M_PI, M_PI, cfg.k_points);
    const std::vector<double> ws =
        linspace(cfg.omega_min, cfg.omega_max, cfg.omega_points);
    const SpectralGrid grid = spectral_heatmap(cfg.params, s, ks, ws);

    CsvTable t;
    t.columns = {"k", "omega", "A"};
    t.rows.reserve(ks.size() * ws.size());
    for (std::size_t ik = 0; ik < ks.size(); ++ik)
        for (std::size_t iw = 0; iw < ws.size(); ++iw)
            t.rows.push_back({ks[ik], ws[iw],
                              grid.a_values(static_cast<int>(ik),
                                            static_cast<int>(iw))});
    return t;
}

CsvTable scaling_factors_table(const RunConfig& cfg) {
    const SelfEnergy s = self_energy(cfg);
    const double gamma_m = (cfg.gamma_const > 0.0) ? cfg.gamma_const
                                                   : markovian_gamma(cfg.params);
    const SelfEnergy frozen = SelfEnergy::frozen_gamma(gamma_m);
    const std::vector<double> ws =
        linspace(cfg.omega_min, cfg.omega_max, cfg.omega_points);

    CsvTable t;
    t.columns = {"omega", "f_plus", "f_minus", "f_plus_markovian",
                 "f_minus_markovian"};
    t.rows.assign(ws.size(), {});
    parallel_for(static_cast<int>(ws.size()), [&](int i) {
        const ScalingFactors fw = scaling_factors(cfg.params, s, ws[i]);
        const ScalingFactors fm = scaling_factors(cfg.params, frozen, ws[i]);
        t.rows[i] = {ws[i], fw.f_plus, fw.f_minus, fm.f_plus, fm.f_minus};
    });
    return t;
}

CsvTable transmission_table(const RunConfig& cfg) {
    const SelfEnergy s = self_energy(cfg);
    ModelParams free_chain = cfg.params;  // g_b = 0 reciprocal reference
    free_chain.g_b = 0.0;
    const std::vector<double> ws =
        linspace(cfg.omega_min, cfg.omega_max, cfg.omega_points);

    CsvTable t;
    t.columns = {"omega", "tau_plus", "tau_minus", "tau_reciprocal"};
    t.rows.assign(ws.size(), {});
    parallel_for(static_cast<int>(ws.size()), [&](int i) {
        const double tp =
            transmission(cfg.params, s, ws[i], Direction::left_to_right);
        const double tm =
            transmission(cfg.params, s, ws[i], Direction::right_to_left);
        const double tr =
            transmission(free_chain, s, ws[i], Direction::left_to_right);
        t.rows[i] = {ws[i], tp, tm, tr};
    });
    return t;
}

CsvTable current_scan_table(const RunConfig& cfg) {
    const SelfEnergy s = self_energy(cfg);
    const LeadConfig lc = lead_config(cfg);
    const std::vector<int> ns = size_grid(cfg.n_min, cfg.n_max);

    CsvTable t;
    t.columns = {"N", "I_plus", "I_minus", "quadrature_error"};
    t.rows.assign(ns.size(), {});
    parallel_for(static_cast<int>(ns.size()), [&](int i) {
        ModelParams p = cfg.params;
        p.n_sites = ns[i];
        const CurrentResult ip =
            current_nonmarkovian(p, s, lc, cfg.mu_d, Direction::left_to_right);
        const CurrentResult im =
            current_nonmarkovian(p, s, lc, cfg.mu_d, Direction::right_to_left);
        t.rows[i] = {static_cast<double>(ns[i]), ip.value, im.value,
                     std::max(ip.quadrature_error, im.quadrature_error)};
    });
    return t;
}

CsvTable ndqpt_table(const RunConfig& cfg) {
    const SelfEnergy s = self_energy(cfg);
    const LeadConfig lc = lead_config(cfg);
    const std::vector<double> mus = linspace(cfg.mu_min, cfg.mu_max, cfg.mu_points);
    const NdqptCurve curve = ndqpt_scan(cfg.params, s, lc, mus);

    CsvTable t;
    t.columns = {"mu_d", "sqrtN_I_plus"};
    for (std::size_t i = 0; i < mus.size(); ++i)
        t.rows.push_back({curve.mu_d_values[i], curve.scaled_current[i]});
    return t;
}

CsvTable markovian_compare_table(const RunConfig& cfg) {
    const LeadConfig lc = lead_config(cfg);
    const std::vector<int> ns = size_grid(cfg.n_min, cfg.n_max);

    CsvTable t;
    t.columns = {"N", "I_plus", "I_minus", "quadrature_error",
                 "I_plus_lyapunov", "I_minus_lyapunov"};
    t.rows.assign(ns.size(), {});
    parallel_for(static_cast<int>(ns.size()), [&](int i) {
        ModelParams p = cfg.params;
        p.n_sites = ns[i];
        const CurrentResult ip =
            current_markovian_negf(p, lc, cfg.mu_d, Direction::left_to_right);
        const CurrentResult im =
            current_markovian_negf(p, lc, cfg.mu_d, Direction::right_to_left);
        const CurrentResult lp =
            current_markovian_lyapunov(p, lc, cfg.mu_d, Direction::left_to_right);
        const CurrentResult lm =
            current_markovian_lyapunov(p, lc, cfg.mu_d, Direction::right_to_left);
        t.rows[i] = {static_cast<double>(ns[i]), ip.value, im.value,
                     std::max(ip.quadrature_error, im.quadrature_error),
                     lp.value, lm.value};
    });
    return t;
}

int run_experiment(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw io_error("cannot create output_dir: " + cfg.output_dir);

    const auto t0 = std::chrono::steady_clock::now();
    int status = 0;

    if (cfg.experiment == Experiment::validate) {
        status = run_validate(cfg);
    } else {
        CsvTable table;
        switch (cfg.experiment) {
            case Experiment::spectral: table = spectral_table(cfg); break;
            case Experiment::scaling_factors:
                table = scaling_factors_table(cfg);
                break;
            case Experiment::transmission: table = transmission_table(cfg); break;
            case Experiment::current_scan: table = current_scan_table(cfg); break;
            case Experiment::ndqpt: table = ndqpt_table(cfg); break;
            case Experiment::markovian_compare:
                table = markovian_compare_table(cfg);
                break;
            case Experiment::validate: break;
        }
        const fs::path csv =
            fs::path(cfg.output_dir) / (experiment_name(cfg.experiment) + ".csv");
        write_csv(csv.string(), table);
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const fs::path manifest = fs::path(cfg.output_dir) / "manifest.json";
    write_manifest(manifest.string(), cfg, wall);
    return status;
}

} // namespace nonrecip

// validate.cpp — randomized oracle checks: recursions, reductions, gauges
#include "cli/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "cli/output.hpp"
#include "nonrecip/analysis.hpp"
#include "nonrecip/lattice.hpp"
#include "nonrecip/momentum.hpp"
#include "nonrecip/quadrature.hpp"
#include "nonrecip/transport.hpp"

namespace nonrecip {

namespace {

struct CheckResult {
    std::string name;
    bool passed;
    double metric;   // the quantity compared against the bound
    double bound;
};

// relative error with a floor: elements below 1e-12 of the matrix scale are
// compared absolutely (dense-oracle roundoff level)
double rel_error(const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& want) {
    const double scale = want.cwiseAbs().maxCoeff();
    double worst = 0.0;
    for (int i = 0; i < want.rows(); ++i)
        for (int j = 0; j < want.cols(); ++j) {
            const double diff = std::abs(got(i, j) - want(i, j));
            const double mag = std::abs(want(i, j));
            if (mag < 1e-12 * scale) {
                if (diff > 1e-12 * scale) worst = std::max(worst, diff / scale);
            } else {
                worst = std::max(worst, diff / mag);
            }
        }
    return worst;
}

std::vector<int> check_sizes(int n_top) {
    std::vector<int> sizes{2, 3, 8, 16, 32, n_top};
    sizes.erase(std::remove_if(sizes.begin(), sizes.end(),
                               [&](int s) { return s > n_top; }),
                sizes.end());
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    return sizes;
}

CheckResult check_resolvent_recursion(const RunConfig& cfg, std::mt19937_64& rng) {
    const SelfEnergy s = self_energy(cfg);
    std::uniform_real_distribution<double> re(cfg.params.delta_c - 3.0 * cfg.params.g,
                                              cfg.params.delta_c + 3.0 * cfg.params.g);
    std::uniform_real_distribution<double> im(0.0, cfg.params.g);
    double worst = 0.0;
    for (int sz : check_sizes(std::min(cfg.params.n_sites, 256))) {
        ModelParams p = cfg.params;
        p.n_sites = sz;
        for (int t = 0; t < cfg.trials; ++t) {
            const cplx z{re(rng), im(rng)};
            const TridiagonalSystem m = build_matrix(p, s, z, Leads::wide_band);
            worst = std::max(worst,
                             rel_error(greens_tridiag_full(m), greens_dense(m)));
        }
    }
    return {"resolvent_recursion", worst <= 1e-9, worst, 1e-9};
}

CheckResult check_extended_reduction(const RunConfig& cfg, std::mt19937_64& rng) {
    const SelfEnergy s = self_energy(cfg);
    if (s.kind == SelfEnergy::Kind::frozen_gamma)
        return {"extended_reduction", true, 0.0, 1e-9};  // no auxiliary system
    std::uniform_real_distribution<double> re(cfg.params.delta_c - 3.0 * cfg.params.g,
                                              cfg.params.delta_c + 3.0 * cfg.params.g);
    std::uniform_real_distribution<double> im(0.05 * cfg.params.g, cfg.params.g);
    double worst = 0.0;
    for (int sz : check_sizes(std::min(cfg.params.n_sites, 64))) {
        ModelParams p = cfg.params;
        p.n_sites = sz;
        p.gamma = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            const cplx z{re(rng), im(rng)};
            const Eigen::MatrixXcd block = extended_greens_block(p, s, z);
            const TridiagonalSystem m =
                build_matrix(p, s, z, Leads::none, BoundaryModel::microscopic);
            worst = std::max(worst, rel_error(block, greens_dense(m)));
        }
    }
    return {"extended_reduction", worst <= 1e-9, worst, 1e-9};
}

CheckResult check_gauge_pairs(const RunConfig& cfg, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> th(0.0, 2.0 * M_PI);
    ModelParams p = cfg.params;
    p.n_sites = std::min(cfg.params.n_sites, 16);
    double worst = 0.0;
    for (int t = 0; t < std::min(cfg.trials, 10); ++t) {
        const FluxPair pair = flux_hamiltonians(p, th(rng));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(pair.flux_form);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(pair.transformed_form);
        worst = std::max(
            worst, (ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff());
    }
    return {"gauge_pairs", worst <= 1e-10, worst, 1e-10};
}

CheckResult check_boundedness(const RunConfig& cfg, std::mt19937_64& rng) {
    const SelfEnergy s = self_energy(cfg);
    const SelfEnergy frozen = SelfEnergy::frozen_gamma(markovian_gamma(cfg.params));
    std::uniform_real_distribution<double> wdist(
        cfg.params.delta_c - 4.0 * cfg.params.g,
        cfg.params.delta_c + 4.0 * cfg.params.g);
    double worst = 0.0;
    for (int t = 0; t < 10 * cfg.trials; ++t) {
        const double w = wdist(rng);
        const ScalingFactors a = scaling_factors(cfg.params, s, w);
        const ScalingFactors b = scaling_factors(cfg.params, frozen, w);
        worst = std::max({worst, a.f_plus, a.f_minus, b.f_plus, b.f_minus});
    }
    return {"boundedness", worst <= 1.0 + 1e-9, worst, 1.0 + 1e-9};
}

CheckResult check_lyapunov_vs_negf(const RunConfig& cfg) {
    ModelParams p = cfg.params;
    p.n_sites = std::min(cfg.params.n_sites, 32);
    LeadConfig lc = lead_config(cfg);
    if (lc.gamma == 0.0) lc.gamma = 0.5 * p.g;
    lc.beta = 10.0 / p.g;
    const double mu_d = dissipationless_mode(p).omega_star;
    double worst = 0.0;
    for (Direction d : {Direction::left_to_right, Direction::right_to_left}) {
        const double negf = current_markovian_negf(p, lc, mu_d, d).value;
        const double lyap = current_markovian_lyapunov(p, lc, mu_d, d).value;
        worst = std::max(worst, std::abs(lyap - negf) / std::abs(negf));
    }
    return {"lyapunov_vs_negf", worst <= 1e-4, worst, 1e-4};
}

CheckResult check_quadrature(const RunConfig& cfg) {
    (void)cfg;
    QuadOptions opt;
    opt.rtol = 1e-10;
    const QuadResult cube =
        integrate([](double x) { return x * x; }, 0.0, 1.0, opt);
    const double e1 = std::abs(cube.value - 1.0 / 3.0);

    const double kappa = 0.25;
    const QuadResult lor = integrate(
        [&](double x) { return kappa / (x * x + kappa * kappa); }, -12.5, 12.5,
        opt);
    const double exact = 2.0 * std::atan(12.5 / kappa);
    const double e2 = std::abs(lor.value - exact) / exact;

    const double worst = std::max(e1, e2);
    return {"quadrature_oracles", worst <= 1e-8, worst, 1e-8};
}

} // namespace

int run_validate(const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::vector<CheckResult> results;
    results.push_back(check_resolvent_recursion(cfg, rng));
    results.push_back(check_extended_reduction(cfg, rng));
    results.push_back(check_gauge_pairs(cfg, rng));
    results.push_back(check_boundedness(cfg, rng));
    results.push_back(check_lyapunov_vs_negf(cfg));
    results.push_back(check_quadrature(cfg));

    int failed = 0;
    for (const auto& r : results) {
        if (!r.passed) ++failed;
        std::printf("[%s] %-22s metric = %.6e  bound = %.3e\n",
                    r.passed ? "ok" : "FAIL", r.name.c_str(), r.metric, r.bound);
    }
    std::printf("validate: %zu/%zu checks passed (n = %d, trials = %d, seed = %u)\n",
                results.size() - failed, results.size(), cfg.params.n_sites,
                cfg.trials, cfg.seed);

    const std::filesystem::path csv =
        std::filesystem::path(cfg.output_dir) / "validate.csv";
    std::ofstream out(csv, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + csv.string());
    out << "check,passed,metric,bound\n";
    for (const auto& r : results)
        out << r.name << ',' << (r.passed ? 1 : 0) << ','
            << format_cell(r.metric) << ',' << format_cell(r.bound) << '\n';
    out.flush();
    if (!out) throw io_error("write failed: " + csv.string());

    return failed == 0 ? 0 : 1;
}

} // namespace nonrecip

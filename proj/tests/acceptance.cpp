// acceptance.cpp — end-to-end checks, one verdict line each, budgets enforced
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/experiments.hpp"
#include "nonrecip/analysis.hpp"
#include "nonrecip/momentum.hpp"
#include "nonrecip/parallel.hpp"
#include "nonrecip/transport.hpp"

using namespace nonrecip;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

int checks_failed = 0;

struct Outcome {
    bool ok = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

void run_check(const std::string& id, const std::string& name, double budget_s,
               const std::function<Outcome()>& body) {
    const auto t0 = clock_type::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double dt =
        std::chrono::duration<double>(clock_type::now() - t0).count();
    bool ok = out.ok;
    std::string note = out.detail;
    if (budget_s > 0.0 && dt > budget_s) {
        ok = false;
        note += " [over budget]";
    }
    if (!ok) ++checks_failed;
    std::printf("[%s] check %s %s: %s (%.1f s / budget %s)\n",
                ok ? "PASS" : "FAIL", id.c_str(), name.c_str(), note.c_str(), dt,
                budget_s > 0.0 ? (fmt(budget_s) + " s").c_str() : "none");
    std::fflush(stdout);
}

ModelParams strong_params(int n) {
    ModelParams p;
    p.g_b = 0.3;
    p.kappa = 0.25;
    p.delta_b = -0.5;
    p.phi = 2.0943951023931953;
    p.n_sites = n;
    return p;
}

ModelParams narrow_params(int n) {
    ModelParams p;
    p.g_b = 0.1;
    p.kappa = 0.1;
    p.delta_b = -1.0;
    p.phi = 2.0943951023931953;
    p.n_sites = n;
    return p;
}

double max_rel(const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& want) {
    const double scale = want.cwiseAbs().maxCoeff();
    return (got - want).cwiseAbs().maxCoeff() / scale;
}

// --- check bodies ------------------------------------------------------

Outcome resolvent_oracle() {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> re(-3.0, 3.0);
    std::uniform_real_distribution<double> im(0.0, 1.0);
    auto p = strong_params(2);
    p.gamma = 0.5;
    const auto s = SelfEnergy::constant_from(p);

    double worst = 0.0;
    for (int n : {2, 3, 8, 64, 256}) {
        p.n_sites = n;
        for (int t = 0; t < 50; ++t) {
            const cplx z{re(rng), im(rng)};
            const auto m = build_matrix(p, s, z, Leads::wide_band);
            worst = std::max(worst, max_rel(greens_tridiag_full(m), greens_dense(m)));
        }
    }
    return {worst <= 1e-9, "max_rel " + fmt(worst) + " <= 1e-9"};
}

Outcome reduction_exactness() {
    std::mt19937 rng(202);
    std::uniform_real_distribution<double> re(-3.0, 3.0);
    std::uniform_real_distribution<double> im(0.05, 1.0);
    auto p = strong_params(2);
    const auto s = SelfEnergy::constant_from(p);

    double worst = 0.0;
    for (int n : {2, 3, 8, 32, 64}) {
        p.n_sites = n;
        for (int t = 0; t < 4; ++t) {
            const cplx z{re(rng), im(rng)};
            const auto block = extended_greens_block(p, s, z);
            const auto reduced = greens_dense(
                build_matrix(p, s, z, Leads::none, BoundaryModel::microscopic));
            worst = std::max(worst, max_rel(block, reduced));
        }
    }
    return {worst <= 1e-9, "max_rel " + fmt(worst) + " <= 1e-9"};
}

Outcome dissipationless_mode_check() {
    const auto p = strong_params(8);
    const auto s = SelfEnergy::constant_from(p);
    const auto mode = dissipationless_mode(p);

    std::mt19937 rng(303);
    std::uniform_real_distribution<double> re(-3.0, 3.0);
    std::uniform_real_distribution<double> im(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const cplx z{re(rng), im(rng)};
        const double gscale = std::abs(gamma_of_z(p, s, z));
        worst = std::max(worst,
                         std::abs(dispersion(p, s, mode.k_star, z).imag()) / gscale);
    }
    const auto f = scaling_factors(p, s, mode.omega_star);
    const bool ok = worst <= 1e-12 && std::abs(f.f_plus - 1.0) <= 1e-8 &&
                    f.f_minus <= 0.999;
    return {ok, "Im/|Gamma| " + fmt(worst) + ", f+(w*) - 1 = " +
                    fmt(f.f_plus - 1.0) + ", f-(w*) = " + fmt(f.f_minus)};
}

Outcome boundedness() {
    const auto p = strong_params(8);
    const auto s = SelfEnergy::constant_from(p);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double w = -4.0 + 8.0 * i / 1999.0;
        const auto f = scaling_factors(p, s, w);
        worst = std::max(worst, std::max(f.f_plus, f.f_minus));
    }
    return {worst <= 1.0 + 1e-9, "max f " + fmt(worst) + " <= 1 + 1e-9"};
}

Outcome sum_rule_and_crossing() {
    const auto p = strong_params(8);
    const auto s = SelfEnergy::constant_from(p);
    const auto ks = linspace(-M_PI, M_PI, 401);
    const auto ws = linspace(-3.0, 3.0, 801);

    std::vector<double> weights(ks.size());
    parallel_for(static_cast<int>(ks.size()),
                 [&](int i) { weights[i] = spectral_weight(p, s, ks[i]); });
    double worst_dev = 0.0;
    for (double v : weights) worst_dev = std::max(worst_dev, std::abs(v - 1.0));

    const auto grid = spectral_heatmap(p, s, ks, ws);
    const double a_min = grid.a_values.minCoeff();

    auto count_peaks = [&](const SelfEnergy& model) {
        std::vector<double> a(ws.size());
        for (size_t i = 0; i < ws.size(); ++i)
            a[i] = spectral_function(p, model, -0.5 * M_PI, ws[i]);
        const double top = *std::max_element(a.begin(), a.end());
        int peaks = 0;
        for (size_t i = 1; i + 1 < a.size(); ++i)
            if (a[i] > a[i - 1] && a[i] > a[i + 1] && a[i] >= 0.05 * top) ++peaks;
        return peaks;
    };
    const int nm_peaks = count_peaks(s);
    const int mk_peaks = count_peaks(SelfEnergy::frozen_gamma(0.09));

    const bool ok = worst_dev <= 1e-3 && a_min >= -1e-12 && nm_peaks == 2 &&
                    mk_peaks == 1;
    return {ok, "sum-rule dev " + fmt(worst_dev) + ", min A " + fmt(a_min) +
                    ", peaks " + std::to_string(nm_peaks) + " vs " +
                    std::to_string(mk_peaks)};
}

Outcome blocking() {
    auto p = narrow_params(30);
    p.gamma = 0.5;
    const auto s = SelfEnergy::constant_from(p);
    const auto mode = dissipationless_mode(p);

    const double r_star =
        transmission(p, s, mode.omega_star, Direction::right_to_left) /
        transmission(p, s, mode.omega_star, Direction::left_to_right);

    double lo_ratio = 1.0;
    double hi_ratio = 1.0;
    for (double w : linspace(-3.0, 3.0, 2401)) {
        if (std::abs(w - mode.omega_star) <= p.g) continue;
        const double r = transmission(p, s, w, Direction::right_to_left) /
                         transmission(p, s, w, Direction::left_to_right);
        lo_ratio = std::min(lo_ratio, r);
        hi_ratio = std::max(hi_ratio, r);
    }
    const bool ok = r_star <= 1e-2 && lo_ratio >= 1.0 / 3.0 && hi_ratio <= 3.0;
    return {ok, "ratio(w*) " + fmt(r_star) + ", off-resonance ratio in [" +
                    fmt(lo_ratio) + ", " + fmt(hi_ratio) + "]"};
}

Outcome ndqpt_scaling() {
    const auto sizes = std::vector<int>{128, 256, 512, 1024, 2048, 4096};
    auto p = strong_params(128);
    const auto s = SelfEnergy::constant_from(p);
    LeadConfig lc;
    lc.gamma = 0.5;
    lc.beta = 100.0;

    struct Job {
        int n;
        double mu;
        Direction dir;
        bool markovian;
        double value = 0.0;
    };
    std::vector<Job> jobs;
    for (int n : sizes) {
        jobs.push_back({n, -0.9, Direction::left_to_right, false});
        jobs.push_back({n, -0.9, Direction::right_to_left, false});
        jobs.push_back({n, -1.1, Direction::left_to_right, false});
        jobs.push_back({n, -1.1, Direction::right_to_left, false});
        jobs.push_back({n, 0.1, Direction::left_to_right, true});
    }
    for (int n : {8192, 16384})  // informational tail, not scored
        jobs.push_back({n, -0.9, Direction::left_to_right, false});

    parallel_for(static_cast<int>(jobs.size()), [&](int i) {
        auto q = p;
        q.n_sites = jobs[i].n;
        jobs[i].value =
            jobs[i].markovian
                ? current_markovian_negf(q, lc, jobs[i].mu, jobs[i].dir).value
                : current_nonmarkovian(q, s, lc, jobs[i].mu, jobs[i].dir).value;
    });

    auto series = [&](double mu, Direction dir, bool mk) {
        std::pair<std::vector<double>, std::vector<double>> out;
        for (const auto& j : jobs)
            if (j.mu == mu && j.dir == dir && j.markovian == mk &&
                j.n <= sizes.back()) {
                out.first.push_back(j.n);
                out.second.push_back(j.value);
            }
        return out;
    };

    const auto above = series(-0.9, Direction::left_to_right, false);
    const auto fwd_fit = fit_scaling(above.first, above.second, FitModel::power_law);

    const auto below = series(-1.1, Direction::left_to_right, false);
    const auto below_fit = fit_scaling(below.first, below.second, FitModel::exponential);

    const auto bwd_above = series(-0.9, Direction::right_to_left, false);
    const auto bwd_above_fit =
        fit_scaling(bwd_above.first, bwd_above.second, FitModel::exponential);
    const auto bwd_below = series(-1.1, Direction::right_to_left, false);
    const auto bwd_below_fit =
        fit_scaling(bwd_below.first, bwd_below.second, FitModel::exponential);

    const auto mk = series(0.1, Direction::left_to_right, true);
    const auto mk_fit = fit_scaling(mk.first, mk.second, FitModel::power_law);

    // informational: the forward exponent drifts toward -1/2 as N grows
    std::vector<std::pair<double, double>> tail;
    for (const auto& j : jobs)
        if (j.mu == -0.9 && j.dir == Direction::left_to_right && !j.markovian &&
            j.n >= 2048)
            tail.emplace_back(j.n, j.value);
    std::sort(tail.begin(), tail.end());
    std::vector<double> tail_n, tail_i;
    for (const auto& [n, v] : tail) {
        tail_n.push_back(n);
        tail_i.push_back(v);
    }
    const auto tail_fit = fit_scaling(tail_n, tail_i, FitModel::power_law);
    std::printf("  info: forward exponent %.4f (N in [128, 4096]), %.4f (N in "
                "[2048, 16384])\n",
                fwd_fit.parameter, tail_fit.parameter);
    std::printf("  info: decaying-side exponential R^2 %.4f, backward R^2 %.4f / "
                "%.4f, markovian exponent %.4f\n",
                below_fit.r_squared, bwd_above_fit.r_squared,
                bwd_below_fit.r_squared, mk_fit.parameter);

    const bool fwd_ok = std::abs(fwd_fit.parameter + 0.5) <= 0.1;
    const bool below_ok = below_fit.r_squared >= 0.99 && below_fit.parameter > 0.0;
    const bool bwd_ok = bwd_above_fit.r_squared >= 0.99 &&
                        bwd_above_fit.parameter > 0.0 &&
                        bwd_below_fit.r_squared >= 0.99 &&
                        bwd_below_fit.parameter > 0.0;
    const bool mk_ok = std::abs(mk_fit.parameter + 0.5) <= 0.1;

    const bool ok = fwd_ok && below_ok && bwd_ok && mk_ok;
    return {ok, "I+ exponent " + fmt(fwd_fit.parameter) +
                    " (want -0.5 +- 0.1), decaying-side R^2 " +
                    fmt(below_fit.r_squared) + " (want >= 0.99), I- exponential " +
                    std::string(bwd_ok ? "ok" : "BAD") + ", markovian exponent " +
                    fmt(mk_fit.parameter)};
}

Outcome ndqpt_curve() {
    auto p = strong_params(1024);
    const auto s = SelfEnergy::constant_from(p);
    LeadConfig lc;
    lc.gamma = 0.5;
    lc.beta = 100.0;
    const auto mode = dissipationless_mode(p);
    const auto mu_grid = linspace(-1.5, -0.5, 51);

    const auto small = ndqpt_scan(p, s, lc, mu_grid);
    const double mu_c = crossover_mu(small.mu_d_values, small.scaled_current);

    std::vector<double> upper;
    for (double mu : mu_grid)
        if (mu >= mode.omega_star + 0.1) upper.push_back(mu);
    auto q = p;
    q.n_sites = 2048;
    const auto large = ndqpt_scan(q, s, lc, upper);

    double worst = 0.0;
    for (size_t i = 0; i < upper.size(); ++i) {
        size_t j = 0;
        while (mu_grid[j] != upper[i]) ++j;
        worst = std::max(worst, std::abs(large.scaled_current[i] -
                                         small.scaled_current[j]) /
                                    small.scaled_current[j]);
    }
    const bool ok = std::abs(mu_c - mode.omega_star) <= 0.05 && worst <= 0.10;
    return {ok, "crossover at " + fmt(mu_c) + " (want " + fmt(mode.omega_star) +
                    " +- 0.05), collapse dev " + fmt(worst) + " <= 0.10"};
}

Outcome lyapunov_vs_negf() {
    LeadConfig lc;
    lc.gamma = 0.5;
    lc.beta = 10.0;
    double worst = 0.0;
    for (int n : {8, 16, 32, 64}) {
        const auto p = strong_params(n);
        for (auto dir : {Direction::left_to_right, Direction::right_to_left}) {
            const double a = current_markovian_negf(p, lc, -1.0, dir).value;
            const double b = current_markovian_lyapunov(p, lc, -1.0, dir).value;
            worst = std::max(worst, std::abs(a - b) / b);
        }
    }
    return {worst <= 1e-4, "max_rel " + fmt(worst) + " <= 1e-4"};
}

Outcome gauge_and_skin() {
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> th(-2.0, 2.0);
    double worst_gap = 0.0;
    for (int t = 0; t < 10; ++t) {
        auto p = strong_params(4 + 4 * (t % 4));
        const auto fp = flux_hamiltonians(p, th(rng));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(fp.flux_form);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(fp.transformed_form);
        if (ea.info() != Eigen::Success || eb.info() != Eigen::Success)
            return {false, "eigensolver failure"};
        worst_gap = std::max(
            worst_gap, (ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff());
    }

    // equal-magnitude hoppings: spectrum real after the half-phase rotation
    const double phi1 = 0.9;
    const double phi2 = -0.3;
    const auto ring = hn_hopping_matrix(15, std::exp(cplx{0.0, phi1}),
                                        std::exp(cplx{0.0, phi2}), cplx{0.0, 0.0});
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ring);
    if (es.info() != Eigen::Success) return {false, "eigensolver failure"};
    const cplx rot = std::exp(cplx{0.0, -0.5 * (phi1 + phi2)});
    double worst_im = 0.0;
    for (int j = 0; j < 15; ++j)
        worst_im = std::max(worst_im, std::abs((rot * es.eigenvalues()(j)).imag()));

    const double balanced = skin_measure(ring);
    const auto t40 = markovian_hoppings(strong_params(40), 0.09);
    const double skewed = skin_measure(
        hn_hopping_matrix(40, t40.t_plus, t40.t_minus, cplx{0.0, -0.09}));

    const bool ok = worst_gap <= 1e-10 && worst_im <= 1e-10 &&
                    std::abs(balanced - 8.0) <= 1e-9 &&
                    std::abs(skewed - 20.5) > 0.2 * 40;
    return {ok, "multiset gap " + fmt(worst_gap) + ", Im(rotated) " +
                    fmt(worst_im) + ", centers " + fmt(balanced) + " / " +
                    fmt(skewed)};
}

Outcome determinism() {
    const fs::path base = fs::temp_directory_path() / "nonrecip_acceptance";
    fs::remove_all(base);
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"spectral", "fig2a"},
        {"scaling-factors", "fig2c"},
        {"transmission", "fig2d"},
    };
    auto slurp = [](const fs::path& f) {
        std::ifstream in(f, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    for (const auto& [sub, preset] : runs) {
        std::string first;
        for (int rep = 0; rep < 2; ++rep) {
            const fs::path dir = base / (preset + std::to_string(rep));
            const auto cfg = parse_config({sub, "--preset", preset, "--output_dir",
                                           dir.string()});
            if (!cfg) return {false, "parse failure for " + preset};
            if (run_experiment(*cfg) != 0) return {false, "run failure for " + preset};
            const std::string bytes = slurp(dir / (sub + ".csv"));
            if (bytes.empty()) return {false, "empty output for " + preset};
            if (rep == 0)
                first = bytes;
            else if (bytes != first)
                return {false, "byte mismatch for " + preset};
        }
    }
    fs::remove_all(base);
    return {true, "3 presets, byte-identical reruns"};
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    run_check("01", "resolvent-oracle", 30.0, resolvent_oracle);
    run_check("02", "reduction-exactness", 10.0, reduction_exactness);
    run_check("03", "dissipationless-mode", 1.0, dissipationless_mode_check);
    run_check("04", "scaling-factor-bound", 5.0, boundedness);
    run_check("05", "sum-rule-and-crossing", 60.0, sum_rule_and_crossing);
    run_check("06", "unidirectional-blocking", 10.0, blocking);
    run_check("07", "current-scaling-laws", 600.0, ndqpt_scaling);
    run_check("08", "scaled-current-crossover", 300.0, ndqpt_curve);
    run_check("09", "lyapunov-vs-resolvent", 60.0, lyapunov_vs_negf);
    run_check("10", "gauge-and-skin", 10.0, gauge_and_skin);
    run_check("11", "deterministic-output", 0.0, determinism);

    if (checks_failed == 0) {
        std::printf("acceptance: all 11 checks passed\n");
        return 0;
    }
    std::printf("acceptance: %d of 11 checks failed\n", checks_failed);
    return 1;
}

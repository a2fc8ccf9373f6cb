// momentum.cpp — dispersion, spectral grids, sum-rule integrals
#include "nonrecip/momentum.hpp"

#include <cmath>

#include "nonrecip/parallel.hpp"
#include "nonrecip/quadrature.hpp"

namespace nonrecip {

cplx dispersion(const ModelParams& p, const SelfEnergy& s, double k, cplx z) {
    const cplx G = gamma_of_z(p, s, z);
    return cplx{p.delta_c - 2.0 * p.g * std::cos(k), 0.0} -
           cplx{0.0, 1.0} * G * (1.0 + std::cos(k + p.phi));
}

cplx momentum_greens(const ModelParams& p, const SelfEnergy& s, double k,
                     double omega) {
    const cplx z{omega, p.eta};
    cplx den = z - dispersion(p, s, k, z);
    if (std::abs(den) < 1e-12 * p.g) den += cplx{0.0, 1e-6 * p.g};
    return 1.0 / den;
}

double spectral_function(const ModelParams& p, const SelfEnergy& s, double k,
                         double omega) {
    return -momentum_greens(p, s, k, omega).imag() / M_PI;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return v;
}

SpectralGrid spectral_heatmap(const ModelParams& p, const SelfEnergy& s,
                              const std::vector<double>& k_grid,
                              const std::vector<double>& omega_grid) {
    validate(p);
    SpectralGrid grid;
    grid.k_values = k_grid;
    grid.omega_values = omega_grid;
    grid.a_values.resize(k_grid.size(), omega_grid.size());
    parallel_for(static_cast<int>(k_grid.size()), [&](int ik) {
        for (size_t iw = 0; iw < omega_grid.size(); ++iw)
            grid.a_values(ik, iw) =
                spectral_function(p, s, k_grid[ik], omega_grid[iw]);
    });
    return grid;
}

DissipationlessMode dissipationless_mode(const ModelParams& p) {
    double k = M_PI - p.phi;
    while (k <= -M_PI) k += 2.0 * M_PI;
    while (k > M_PI) k -= 2.0 * M_PI;
    return DissipationlessMode{k, p.delta_c - 2.0 * p.g * std::cos(k)};
}

namespace {

// quasiparticle center at fixed k: fixed point of omega = Re eps(k, omega)
double refine_peak_center(const ModelParams& p, const SelfEnergy& s, double k) {
    double w = p.delta_c - 2.0 * p.g * std::cos(k);
    for (int it = 0; it < 8; ++it) {
        try {
            w = dispersion(p, s, k, cplx{w, 0.0}).real();
        } catch (const singular_denominator_error&) {
            break;
        }
    }
    return w;
}

void push_log_offsets(std::vector<double>& seeds, double center) {
    seeds.push_back(center);
    for (double d = 1e-1; d >= 0.9e-7; d *= 0.1) {
        seeds.push_back(center - d);
        seeds.push_back(center + d);
    }
}

} // namespace

double spectral_weight(const ModelParams& p, const SelfEnergy& s, double k) {
    const double lo = p.delta_c - 12.0 * p.g;
    const double hi = p.delta_c + 12.0 * p.g;

    QuadOptions opt;
    opt.rtol = 1e-8;
    opt.atol = 1e-14 * p.g;
    push_log_offsets(opt.split_points, refine_peak_center(p, s, k));
    push_log_offsets(opt.split_points, p.delta_b);
    const DissipationlessMode mode = dissipationless_mode(p);
    push_log_offsets(opt.split_points, mode.omega_star);
    opt.split_points.push_back(p.delta_c - 2.0 * p.g);
    opt.split_points.push_back(p.delta_c + 2.0 * p.g);

    return integrate([&](double w) { return spectral_function(p, s, k, w); }, lo,
                     hi, opt)
        .value;
}

PeakShape spectral_peak(const ModelParams& p, const SelfEnergy& s, double k,
                        double omega_lo, double omega_hi, int n_points) {
    const std::vector<double> grid = linspace(omega_lo, omega_hi, n_points);
    std::vector<double> a(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        a[i] = spectral_function(p, s, k, grid[i]);

    size_t imax = 0;
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] > a[imax]) imax = i;

    PeakShape peak;
    peak.omega_peak = grid[imax];
    peak.height = a[imax];
    const double half = 0.5 * peak.height;

    // walk outward to the half-maximum crossings, linear interpolation
    double left = grid.front();
    for (size_t i = imax; i > 0; --i) {
        if (a[i - 1] < half) {
            const double frac = (half - a[i - 1]) / (a[i] - a[i - 1]);
            left = grid[i - 1] + frac * (grid[i] - grid[i - 1]);
            break;
        }
    }
    double right = grid.back();
    for (size_t i = imax; i + 1 < a.size(); ++i) {
        if (a[i + 1] < half) {
            const double frac = (a[i] - half) / (a[i] - a[i + 1]);
            right = grid[i] + frac * (grid[i + 1] - grid[i]);
            break;
        }
    }
    peak.fwhm = right - left;
    return peak;
}

} // namespace nonrecip

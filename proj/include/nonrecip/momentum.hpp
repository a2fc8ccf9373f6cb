// momentum.hpp — Bloch dispersion, G(k,omega), spectral function grids
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nonrecip/model.hpp"

namespace nonrecip {

// eps(k,z) = delta_c - 2g cos k - i*Gamma(z)*(1 + cos(k+phi))
cplx dispersion(const ModelParams& p, const SelfEnergy& s, double k, cplx z);

// G(k,omega) = 1/(omega - eps(k,omega)); the measure-zero dissipationless
// point is shifted by i*eta_pole = i*1e-6*g when |omega - eps| < 1e-12*g.
cplx momentum_greens(const ModelParams& p, const SelfEnergy& s, double k,
                     double omega);

// A(k,omega) = -Im G(k,omega) / pi
double spectral_function(const ModelParams& p, const SelfEnergy& s, double k,
                         double omega);

struct SpectralGrid {
    std::vector<double> k_values;
    std::vector<double> omega_values;
    Eigen::MatrixXd a_values;   // a_values(ik, iw)
};

// Parallel map over k columns; identical to the serial evaluation order.
SpectralGrid spectral_heatmap(const ModelParams& p, const SelfEnergy& s,
                              const std::vector<double>& k_grid,
                              const std::vector<double>& omega_grid);

// evenly spaced grid helper, endpoints included
std::vector<double> linspace(double lo, double hi, int n);

struct DissipationlessMode {
    double k_star;      // pi - phi folded into (-pi, pi]
    double omega_star;  // delta_c - 2g cos(k_star)
};
DissipationlessMode dissipationless_mode(const ModelParams& p);

// Adaptive integral of A(k, .) over [delta_c - 12g, delta_c + 12g]; the
// retarded sum rule makes it 1 to the quadrature tolerance.
double spectral_weight(const ModelParams& p, const SelfEnergy& s, double k);

// Tallest-peak diagnostics of A(k, .) on a local omega grid:
// linear-interpolated full width at half maximum.
struct PeakShape {
    double omega_peak;
    double height;
    double fwhm;
};
PeakShape spectral_peak(const ModelParams& p, const SelfEnergy& s, double k,
                        double omega_lo, double omega_hi, int n_points);

} // namespace nonrecip

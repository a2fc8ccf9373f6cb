// analysis.hpp — scaling fits, crossover detection, skin-mode diagnostics
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nonrecip/errors.hpp"
#include "nonrecip/model.hpp"
#include "nonrecip/transport.hpp"

namespace nonrecip {

enum class FitModel {
    power_law,    // I = prefactor * N^parameter
    exponential,  // I = prefactor * exp(-parameter * N)
};

struct FitResult {
    FitModel model;
    double parameter = 0.0;   // exponent (power) or decay rate (exponential)
    double prefactor = 0.0;
    double r_squared = 0.0;   // on the log-linearized data
};

// Least-squares fit of current magnitudes against system size.  Requires at
// least four samples, strictly increasing sizes, and positive currents;
// otherwise throws degenerate_fit_error.
FitResult fit_scaling(const std::vector<double>& n_sites,
                      const std::vector<double>& currents, FitModel model);

struct NdqptCurve {
    std::vector<double> mu_d_values;
    std::vector<double> scaled_current;  // sqrt(N) * I_plus
    int n_sites = 0;
};

// sqrt(N)-scaled forward current over a drive-chemical-potential grid.
NdqptCurve ndqpt_scan(const ModelParams& p, const SelfEnergy& s,
                      const LeadConfig& lc, const std::vector<double>& mu_grid);

// Chemical potential of steepest change in a scanned curve: midpoint of the
// grid interval with the largest finite-difference slope magnitude.
double crossover_mu(const std::vector<double>& mu_d_values,
                    const std::vector<double>& values);

// Dense Hatano-Nelson hopping matrix: diag on-site, t_plus below the
// diagonal, t_minus above.
Eigen::MatrixXcd hn_hopping_matrix(int n, cplx t_plus, cplx t_minus, cplx diag);

// Mean center of mass of all right eigenvectors, sites numbered 1..N.
// Throws defective_matrix_error when the eigenbasis is too ill-conditioned
// to trust.
double skin_measure(const Eigen::MatrixXcd& h);

} // namespace nonrecip

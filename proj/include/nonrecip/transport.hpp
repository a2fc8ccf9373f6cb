// transport.hpp — transmissions, NESS currents, Lyapunov steady state
#pragma once

#include <Eigen/Dense>

#include "nonrecip/lattice.hpp"

namespace nonrecip {

enum class Direction { left_to_right, right_to_left };

struct LeadConfig {
    double mu_left{-std::numeric_limits<double>::infinity()};
    double mu_right{-std::numeric_limits<double>::infinity()};
    double beta{std::numeric_limits<double>::infinity()};
    double gamma{0.0};   // wide-band coupling, both ends
};

struct CurrentResult {
    double value{0.0};
    Direction direction{Direction::left_to_right};
    double quadrature_error{0.0};
};

// tau_+ = |G_{N1}|^2, tau_- = |G_{1N}|^2, leads -i*gamma/2 at both ends
double transmission(const ModelParams& p, const SelfEnergy& s, double omega,
                    Direction dir);

// I = gamma^2 \int dw/2pi n_F(w; mu_d, beta) |G_corner(w)|^2 over the
// broadened band window; beta = inf becomes a sharp cutoff at mu_d.
CurrentResult current_nonmarkovian(const ModelParams& p, const SelfEnergy& s,
                                   const LeadConfig& lc, double mu_d,
                                   Direction dir);

// Markovian reference: Gamma pinned to g_b^2/g, Fermi factor n(mu_d) =
// [e^{beta(delta_c - mu_d)} + 1]^{-1} pulled out, full-axis integral.
CurrentResult current_markovian_negf(const ModelParams& p, const LeadConfig& lc,
                                     double mu_d, Direction dir);

// Solves 0 = i H^dag C - i C H + Q for the drift H paired to the local-GKSL
// generator of <c_l^dag c_m>: H is the transpose of the Markovian effective
// Hamiltonian (uniform -i*Gamma, -i*gamma at both end sites). Q_11 =
// gamma*n(mu_left), Q_NN = gamma*n(mu_right). Eigendecomposition path with a
// vectorized dense fallback (N <= 128) when the eigenvectors are
// ill-conditioned; residual <= 1e-10 * ||Q||_max.
Eigen::MatrixXcd lyapunov_steady_state(const ModelParams& p, const LeadConfig& lc);

// generic solver for 0 = i H^dag C - i C H + Q
Eigen::MatrixXcd solve_lyapunov(const Eigen::MatrixXcd& h,
                                const Eigen::MatrixXcd& q);

// I_+ = gamma * C_NN with the left lead driven at mu_d (right empty);
// I_- = gamma * C_11 with the right lead driven.
CurrentResult current_markovian_lyapunov(const ModelParams& p,
                                         const LeadConfig& lc, double mu_d,
                                         Direction dir);

// occupation [e^{beta(e - mu)} + 1]^{-1}, stable for any beta including inf
double fermi_occupation(double energy, double mu, double beta);

} // namespace nonrecip

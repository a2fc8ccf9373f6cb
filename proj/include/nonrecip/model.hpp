// model.hpp — lattice parameters, bath self-energy models, Gamma(z), t_pm(z)
#pragma once

#include <complex>
#include <functional>
#include <limits>

#include <Eigen/Dense>

#include "nonrecip/errors.hpp"

namespace nonrecip {

using cplx = std::complex<double>;

// Chain of N sites coupled to one auxiliary site per bond; the auxiliary band
// is broadened by a bath self-energy Sigma(z). All energies in units of g.
struct ModelParams {
    double g{1.0};        // nearest-neighbor hopping, the energy unit
    double g_b{0.0};      // chain-auxiliary coupling
    double phi{0.0};      // Peierls phase on the auxiliary triangle
    double delta_c{0.0};  // chain on-site energy
    double delta_b{0.0};  // auxiliary-site energy
    double kappa{0.0};    // bath width, Sigma = kappa/2 in the constant model
    double gamma{0.0};    // boundary-lead coupling (wide band)
    int n_sites{2};       // chain length N
    double beta{std::numeric_limits<double>::infinity()};  // lead inverse temperature
    double eta{0.0};      // optional +i*eta frequency shift for reciprocal references
};

// throws std::invalid_argument on violated parameter bounds
void validate(const ModelParams& p);

// Sigma(z) entering Gamma(z) = 2 g_b^2 / (i(delta_b - z) + Sigma(z)).
// frozen_gamma bypasses Sigma and pins Gamma(z) to a constant: the Markovian
// limit runs through exactly the same downstream code as the full model.
struct SelfEnergy {
    enum class Kind { constant, closed_form, frozen_gamma };

    Kind kind{Kind::constant};
    double value{0.0};                 // constant: Sigma; frozen_gamma: Gamma
    std::function<cplx(cplx)> form;    // closed_form evaluator, Im z >= 0

    static SelfEnergy constant(double sigma);
    static SelfEnergy constant_from(const ModelParams& p);  // kappa/2
    static SelfEnergy closed_form(std::function<cplx(cplx)> f);
    static SelfEnergy frozen_gamma(double gamma_const);

    cplx operator()(cplx z) const;     // Sigma(z); invalid for frozen_gamma
};

// Gamma(z) = 2 g_b^2 / (i(delta_b - z) + Sigma(z)).
// Throws singular_denominator_error when the denominator magnitude drops
// below 1e-14*g (kappa = 0 evaluated exactly at z = delta_b).
cplx gamma_of_z(const ModelParams& p, const SelfEnergy& s, cplx z);

struct Hoppings {
    cplx t_plus;   // amplitude for j -> j+1
    cplx t_minus;  // amplitude for j+1 -> j
};

// t_pm(z) = -g - i e^{mp i phi} Gamma(z)/2
Hoppings hoppings(const ModelParams& p, const SelfEnergy& s, cplx z);

// frequency-independent limit with Gamma pinned to gamma_const
Hoppings markovian_hoppings(const ModelParams& p, double gamma_const);

// default Markovian constant, Gamma = g_b^2/g
double markovian_gamma(const ModelParams& p);

// on-site term of the effective Hamiltonian, eps(z) = delta_c - i*Gamma(z)
cplx eps_onsite(const ModelParams& p, const SelfEnergy& s, cplx z);

// Single-particle matrices for the gauge argument: (a) flux form with phase
// theta on all three bonds of each chain-auxiliary triangle, (b) transformed
// form with real chain bonds and one phase phi = 3*theta per triangle. Both
// are (2N-1) x (2N-1) Hermitian (N chain + N-1 auxiliary sites, no bath
// broadening) and share their eigenvalue multiset.
struct FluxPair {
    Eigen::MatrixXcd flux_form;
    Eigen::MatrixXcd transformed_form;
};
FluxPair flux_hamiltonians(const ModelParams& p, double theta);

} // namespace nonrecip

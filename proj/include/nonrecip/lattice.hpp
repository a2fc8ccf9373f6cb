// lattice.hpp — M(z) = zI - H_eff(z) - Sigma_leads and its resolvent elements
#pragma once

#include <Eigen/Dense>

#include "nonrecip/model.hpp"

namespace nonrecip {

enum class Leads { none, wide_band };  // wide band: Sigma_11 = Sigma_NN = -i*gamma/2

// Boundary sites of the chain have one auxiliary neighbor, not two, so the
// exact reduction carries i*Gamma/2 there instead of i*Gamma. `uniform` is the
// translation-invariant idealization used by every physics pipeline;
// `microscopic` reproduces the extended system exactly.
enum class BoundaryModel { uniform, microscopic };

// Compact tridiagonal M(z): diag entries z - eps(z) (ends adjusted by leads /
// boundary model), upper off-diagonal -t_minus(z), lower -t_plus(z).
struct TridiagonalSystem {
    int n{0};
    cplx diag;        // bulk diagonal
    cplx diag_first;
    cplx diag_last;
    cplx off_upper;   // -t_minus
    cplx off_lower;   // -t_plus
};

TridiagonalSystem build_matrix(const ModelParams& p, const SelfEnergy& s, cplx z,
                               Leads leads,
                               BoundaryModel boundary = BoundaryModel::uniform);

Eigen::MatrixXcd to_dense(const TridiagonalSystem& m);

// Dense-LU inverse with pivot and residual checks (oracle path).
// Throws singular_matrix_error on pivot collapse, numerical_error when the
// relative residual ||M*G - I||_max exceeds 1e-10.
Eigen::MatrixXcd greens_dense(const Eigen::MatrixXcd& m);
inline Eigen::MatrixXcd greens_dense(const TridiagonalSystem& m) {
    return greens_dense(to_dense(m));
}

// All resolvent elements from the determinant recursions (theta forward from
// site 0, phi backward from site n-1), log-scaled so N up to ~1e7 cannot
// overflow. Agrees with greens_dense to 1e-9 relative.
Eigen::MatrixXcd greens_tridiag_full(const TridiagonalSystem& m);

// Single element [G]_{row,col} in O(n), 0-based indices.
cplx greens_element(const TridiagonalSystem& m, int row, int col);

// log|G| and phase of a corner element (row, col) in O(n) with O(1) memory;
// the workhorse for transmissions and current integrands at large N.
struct LogElement {
    double log_mag;   // natural log of |G|
    double phase;     // arg(G), radians
};
LogElement greens_corner_log(const TridiagonalSystem& m, bool left_to_right);

// Chain block of the inverse of the full (2N-1)-site chain-plus-auxiliary
// matrix (auxiliary diagonal z - delta_b + i*Sigma(z)); equals the reduced
// resolvent with BoundaryModel::microscopic — the reduction is exact.
Eigen::MatrixXcd extended_greens_block(const ModelParams& p, const SelfEnergy& s,
                                       cplx z);

struct TransferMatrix {
    cplx t11;  // z - eps(z)
    cplx t12;  // -t_plus * t_minus
    cplx t21;  // 1
    cplx t22;  // 0
};
TransferMatrix transfer_matrix(const ModelParams& p, const SelfEnergy& s, cplx z);

struct ScalingFactors {
    double f_plus;
    double f_minus;
    cplx lambda_dominant;
    bool degenerate;   // | |l+| - |l-| | < 1e-10 |l+| (branch point)
};

// f_pm = |t_pm(omega) / lambda(omega)| with lambda the dominant transfer-
// matrix eigenvalue; governs |G_{l j}| ~ f_pm^{|l-j|}.
ScalingFactors scaling_factors(const ModelParams& p, const SelfEnergy& s,
                               double omega);

// Dense Markovian effective Hamiltonian (resolvent orientation: upper
// diagonal t_minus, lower t_plus, diagonal delta_c - i*Gamma), no leads.
Eigen::MatrixXcd markovian_heff(const ModelParams& p, double gamma_const);

} // namespace nonrecip

// errors.hpp — exception hierarchy shared by all modules
#pragma once

#include <stdexcept>
#include <string>

namespace nonrecip {

// base for everything that should map to exit code 1 (numerical failure)
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// |i(delta_b - z) + Sigma(z)| below threshold: kappa = 0 evaluated at z = delta_b
struct singular_denominator_error : numerical_error {
    using numerical_error::numerical_error;
};

// pivot collapse in the dense LU path (resonance of a dissipationless system)
struct singular_matrix_error : numerical_error {
    using numerical_error::numerical_error;
};

// adaptive integrator hit max bisection depth with the tolerance unmet
struct quadrature_convergence_error : numerical_error {
    using numerical_error::numerical_error;
};

// eigenvector matrix too ill-conditioned to trust a diagonalization
struct defective_matrix_error : numerical_error {
    using numerical_error::numerical_error;
};

// scaling fit impossible: nonpositive data or fewer than 4 points
struct degenerate_fit_error : numerical_error {
    using numerical_error::numerical_error;
};

// bad CLI flag / config key / preset (exit code 2)
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// output files could not be written (exit code 3)
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nonrecip

// quadrature.hpp — adaptive Gauss-Kronrod (G7,K15) with seeded split points
#pragma once

#include <functional>
#include <vector>

#include "nonrecip/errors.hpp"

namespace nonrecip {

struct QuadOptions {
    double rtol{1e-8};
    double atol{1e-14};
    int max_depth{30};                  // bisections per initial panel
    std::vector<double> split_points;   // interior seeds (peaks, cutoffs)
};

struct QuadResult {
    double value{0.0};
    double error{0.0};      // accumulated |K15 - G7| over accepted panels
    long evaluations{0};
};

// Integrates f over [a, b]. Panels start at the seeded split points and are
// bisected worst-error-first until sum(err) <= max(atol, rtol*|value|).
// Deterministic: strict panel ordering, fixed-order compensated summation.
// Throws quadrature_convergence_error when a panel would exceed max_depth.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

} // namespace nonrecip

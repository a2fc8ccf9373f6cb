// model.cpp — Gamma(z), hoppings, Markovian limit, gauge-pair construction
#include "nonrecip/model.hpp"

#include <cmath>

namespace nonrecip {

void validate(const ModelParams& p) {
    if (!(p.g > 0.0)) throw std::invalid_argument("g must be > 0");
    if (p.g_b < 0.0) throw std::invalid_argument("g_b must be >= 0");
    if (p.kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
    if (p.gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    if (p.n_sites < 2) throw std::invalid_argument("n_sites must be >= 2");
    if (!(p.beta > 0.0)) throw std::invalid_argument("beta must be > 0 (or infinity)");
    if (p.eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    if (!std::isfinite(p.phi)) throw std::invalid_argument("phi must be finite");
}

SelfEnergy SelfEnergy::constant(double sigma) {
    SelfEnergy s;
    s.kind = Kind::constant;
    s.value = sigma;
    return s;
}

SelfEnergy SelfEnergy::constant_from(const ModelParams& p) {
    return constant(0.5 * p.kappa);
}

SelfEnergy SelfEnergy::closed_form(std::function<cplx(cplx)> f) {
    SelfEnergy s;
    s.kind = Kind::closed_form;
    s.form = std::move(f);
    return s;
}

SelfEnergy SelfEnergy::frozen_gamma(double gamma_const) {
    SelfEnergy s;
    s.kind = Kind::frozen_gamma;
    s.value = gamma_const;
    return s;
}

cplx SelfEnergy::operator()(cplx z) const {
    switch (kind) {
        case Kind::constant: return cplx{value, 0.0};
        case Kind::closed_form: return form(z);
        case Kind::frozen_gamma:
            throw std::logic_error("frozen-Gamma model has no Sigma(z); Gamma is pinned");
    }
    return {};
}

cplx gamma_of_z(const ModelParams& p, const SelfEnergy& s, cplx z) {
    if (s.kind == SelfEnergy::Kind::frozen_gamma) return cplx{s.value, 0.0};
    if (p.g_b == 0.0) return cplx{0.0, 0.0};
    const cplx den = cplx{0.0, 1.0} * (cplx{p.delta_b, 0.0} - z) + s(z);
    if (std::abs(den) < 1e-14 * p.g)
        throw singular_denominator_error("Gamma(z) denominator vanishes near z = delta_b");
    return 2.0 * p.g_b * p.g_b / den;
}

Hoppings hoppings(const ModelParams& p, const SelfEnergy& s, cplx z) {
    const cplx G = gamma_of_z(p, s, z);
    const cplx i{0.0, 1.0};
    return Hoppings{
        -p.g - i * std::exp(-i * p.phi) * G * 0.5,   // t_plus
        -p.g - i * std::exp(+i * p.phi) * G * 0.5,   // t_minus
    };
}

Hoppings markovian_hoppings(const ModelParams& p, double gamma_const) {
    return hoppings(p, SelfEnergy::frozen_gamma(gamma_const), cplx{0.0, 0.0});
}

double markovian_gamma(const ModelParams& p) {
    return p.g_b * p.g_b / p.g;
}

cplx eps_onsite(const ModelParams& p, const SelfEnergy& s, cplx z) {
    return cplx{p.delta_c, 0.0} - cplx{0.0, 1.0} * gamma_of_z(p, s, z);
}

FluxPair flux_hamiltonians(const ModelParams& p, double theta) {
    validate(p);
    const int n = p.n_sites;
    const int dim = 2 * n - 1;                 // chain 0..n-1, auxiliary n..2n-2
    const cplx i{0.0, 1.0};
    const cplx eth = std::exp(i * theta);
    const cplx phase3 = std::exp(i * (3.0 * theta));

    FluxPair out;
    out.flux_form = Eigen::MatrixXcd::Zero(dim, dim);
    out.transformed_form = Eigen::MatrixXcd::Zero(dim, dim);

    auto fill = [&](Eigen::MatrixXcd& h, cplx chain, cplx cb, cplx bc) {
        // chain  = <c_{j+1}|H|c_j>, cb = <b_j|H|c_j>, bc = <c_{j+1}|H|b_j>
        for (int j = 0; j < n; ++j) h(j, j) = p.delta_c;
        for (int j = 0; j < n - 1; ++j) {
            const int a = n + j;
            h(a, a) = p.delta_b;
            h(j + 1, j) = chain;
            h(j, j + 1) = std::conj(chain);
            h(a, j) = cb;
            h(j, a) = std::conj(cb);
            h(j + 1, a) = bc;
            h(a, j + 1) = std::conj(bc);
        }
    };

    // One phase theta per directed bond, oriented so the triangle encloses
    // flux 3*theta; the gauge below concentrates it on the b_j -> c_{j+1} bond.
    fill(out.flux_form, -p.g * eth, p.g_b * std::conj(eth), p.g_b * std::conj(eth));
    fill(out.transformed_form, cplx{-p.g, 0.0}, cplx{p.g_b, 0.0},
         p.g_b * std::conj(phase3));
    return out;
}

} // namespace nonrecip

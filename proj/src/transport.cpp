// transport.cpp — current integrals and the algebraic steady state
#include "nonrecip/transport.hpp"

#include <cmath>
#include <optional>

#include "nonrecip/quadrature.hpp"

namespace nonrecip {

double fermi_occupation(double energy, double mu, double beta) {
    if (std::isinf(mu)) return (mu > 0.0) ? 1.0 : 0.0;
    if (std::isinf(beta)) {
        if (energy < mu) return 1.0;
        return (energy == mu) ? 0.5 : 0.0;
    }
    const double x = beta * (energy - mu);
    if (x > 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

double transmission(const ModelParams& p, const SelfEnergy& s, double omega,
                    Direction dir) {
    if (!(p.gamma > 0.0))
        throw std::invalid_argument("transmission needs attached leads (gamma > 0)");
    const TridiagonalSystem m =
        build_matrix(p, s, cplx{omega, 0.0}, Leads::wide_band);
    const LogElement e =
        greens_corner_log(m, dir == Direction::left_to_right);
    const double lt = 2.0 * e.log_mag;
    return (lt < -745.0) ? 0.0 : std::exp(lt);
}

namespace {

void push_log_offsets(std::vector<double>& seeds, double center) {
    seeds.push_back(center);
    for (double d = 1e-1; d >= 0.9e-7; d *= 0.1) {
        seeds.push_back(center - d);
        seeds.push_back(center + d);
    }
}

std::vector<double> current_seeds(const ModelParams& p, double mu_d) {
    std::vector<double> seeds;
    const double k_star_omega =
        p.delta_c - 2.0 * p.g * std::cos(M_PI - p.phi);
    push_log_offsets(seeds, k_star_omega);
    push_log_offsets(seeds, p.delta_b);
    push_log_offsets(seeds, mu_d);
    seeds.push_back(p.delta_c - 2.0 * p.g);
    seeds.push_back(p.delta_c + 2.0 * p.g);
    return seeds;
}

double corner_weight(const ModelParams& p, const SelfEnergy& s, double omega,
                     Direction dir) {
    const TridiagonalSystem m =
        build_matrix(p, s, cplx{omega, 0.0}, Leads::wide_band);
    const LogElement e =
        greens_corner_log(m, dir == Direction::left_to_right);
    const double lt = 2.0 * e.log_mag;
    return (lt < -745.0) ? 0.0 : std::exp(lt);
}

} // namespace

CurrentResult current_nonmarkovian(const ModelParams& p, const SelfEnergy& s,
                                   const LeadConfig& lc, double mu_d,
                                   Direction dir) {
    validate(p);
    CurrentResult out;
    out.direction = dir;
    if (lc.gamma == 0.0) return out;

    ModelParams pl = p;
    pl.gamma = lc.gamma;
    const double w_margin = 10.0 * (p.kappa + lc.gamma + p.g_b);
    const double lo = p.delta_c - 2.0 * p.g - w_margin;
    const double fermi_tail = std::isinf(lc.beta) ? 0.0 : 40.0 / lc.beta;
    const double hi = std::min(mu_d + fermi_tail, p.delta_c + 2.0 * p.g + w_margin);
    if (!(hi > lo)) return out;

    const double scale = lc.gamma * lc.gamma / (2.0 * M_PI);
    QuadOptions opt;
    opt.rtol = 1e-8;
    opt.atol = 1e-14 * p.g;
    opt.split_points = current_seeds(p, mu_d);

    const QuadResult q = integrate(
        [&](double w) {
            return scale * fermi_occupation(w, mu_d, lc.beta) *
                   corner_weight(pl, s, w, dir);
        },
        lo, hi, opt);
    out.value = q.value;
    out.quadrature_error = q.error;
    return out;
}

CurrentResult current_markovian_negf(const ModelParams& p, const LeadConfig& lc,
                                     double mu_d, Direction dir) {
    validate(p);
    CurrentResult out;
    out.direction = dir;
    if (lc.gamma == 0.0) return out;

    const double n = fermi_occupation(p.delta_c, mu_d, lc.beta);
    if (n == 0.0) return out;

    ModelParams pl = p;
    // the local-GKSL lead damps single-particle amplitudes at the full rate
    // gamma, i.e. a wide-band lead of strength 2*gamma; required for exact
    // agreement with the Lyapunov steady state
    pl.gamma = 2.0 * lc.gamma;
    const SelfEnergy frozen = SelfEnergy::frozen_gamma(markovian_gamma(p));
    const double w_margin = 10.0 * (p.kappa + lc.gamma + p.g_b);
    const double lo = p.delta_c - 2.0 * p.g - w_margin;
    const double hi = p.delta_c + 2.0 * p.g + w_margin;

    const double scale = lc.gamma * lc.gamma * n / (2.0 * M_PI);
    QuadOptions opt;
    opt.rtol = 1e-8;
    opt.atol = 1e-14 * p.g;
    opt.split_points = current_seeds(p, mu_d);

    const QuadResult q = integrate(
        [&](double w) { return scale * corner_weight(pl, frozen, w, dir); }, lo,
        hi, opt);
    out.value = q.value;
    out.quadrature_error = q.error;
    return out;
}

Eigen::MatrixXcd solve_lyapunov(const Eigen::MatrixXcd& h,
                                const Eigen::MatrixXcd& q) {
    const int n = static_cast<int>(h.rows());
    const cplx i{0.0, 1.0};

    auto residual_ok = [&](const Eigen::MatrixXcd& c) {
        const double qmax = q.cwiseAbs().maxCoeff();
        const double r =
            (i * (h.adjoint() * c - c * h) + q).cwiseAbs().maxCoeff();
        return r <= 1e-10 * std::max(qmax, 1e-300);
    };

    auto vectorized = [&]() {
        if (n > 128)
            throw defective_matrix_error(
                "vectorized Lyapunov fallback limited to N <= 128");
        Eigen::MatrixXcd a(n * n, n * n);
        a.setZero();
        const Eigen::MatrixXcd hd = h.adjoint();
        // column-major vec: i*(I kron H^dag - H^T kron I) vec(C) = -vec(Q)
        for (int cb = 0; cb < n; ++cb)
            for (int rb = 0; rb < n; ++rb) {
                const cplx ht = h(cb, rb);  // (H^T)(rb, cb)
                for (int d = 0; d < n; ++d)
                    a(rb * n + d, cb * n + d) -= i * ht;
                if (rb == cb)
                    for (int r = 0; r < n; ++r)
                        for (int c2 = 0; c2 < n; ++c2)
                            a(rb * n + r, cb * n + c2) += i * hd(r, c2);
            }
        Eigen::VectorXcd rhs(n * n);
        for (int c2 = 0; c2 < n; ++c2)
            for (int r = 0; r < n; ++r) rhs(c2 * n + r) = -q(r, c2);
        const Eigen::VectorXcd x = a.partialPivLu().solve(rhs);
        Eigen::MatrixXcd cm(n, n);
        for (int c2 = 0; c2 < n; ++c2)
            for (int r = 0; r < n; ++r) cm(r, c2) = x(c2 * n + r);
        return cm;
    };

    // Schur form stays well conditioned where an eigenbasis of a skin-effect
    // drift does not: with h = U T U^dag the equation becomes
    // T^dag X - X T = i U^dag Q U, solvable by forward substitution
    auto schur_solve = [&]() -> std::optional<Eigen::MatrixXcd> {
        Eigen::ComplexSchur<Eigen::MatrixXcd> schur(h, true);
        if (schur.info() != Eigen::Success) return std::nullopt;
        const Eigen::MatrixXcd& u = schur.matrixU();
        const Eigen::MatrixXcd& t = schur.matrixT();
        const Eigen::MatrixXcd r = i * (u.adjoint() * q * u);
        Eigen::MatrixXcd x(n, n);
        for (int row = 0; row < n; ++row)
            for (int col = 0; col < n; ++col) {
                cplx acc = r(row, col);
                if (row > 0)
                    acc -= t.col(row).head(row).dot(x.col(col).head(row));
                if (col > 0)
                    acc += (x.row(row).head(col) * t.col(col).head(col)).value();
                const cplx den = std::conj(t(row, row)) - t(col, col);
                if (std::abs(den) < 1e-14) return std::nullopt;
                x(row, col) = acc / den;
            }
        return (u * x * u.adjoint()).eval();
    };

    if (auto solved = schur_solve()) {
        Eigen::MatrixXcd c = 0.5 * (*solved + solved->adjoint());
        if (residual_ok(c)) return c;
    }

    // near-defective eigenbasis: brute-force linear solve
    Eigen::MatrixXcd c = vectorized();
    c = 0.5 * (c + c.adjoint()).eval();
    if (!residual_ok(c))
        throw numerical_error("Lyapunov residual above 1e-10 * ||Q||_max");
    return c;
}

Eigen::MatrixXcd lyapunov_steady_state(const ModelParams& p,
                                       const LeadConfig& lc) {
    validate(p);
    const int n = p.n_sites;
    const cplx i{0.0, 1.0};

    Eigen::MatrixXcd heff = markovian_heff(p, markovian_gamma(p));
    heff(0, 0) -= i * lc.gamma;
    heff(n - 1, n - 1) -= i * lc.gamma;

    Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n, n);
    q(0, 0) = lc.gamma * fermi_occupation(p.delta_c, lc.mu_left, lc.beta);
    q(n - 1, n - 1) = lc.gamma * fermi_occupation(p.delta_c, lc.mu_right, lc.beta);

    // correlation-matrix drift is the transpose of the resolvent-orientation
    // effective Hamiltonian
    return solve_lyapunov(heff.transpose(), q);
}

CurrentResult current_markovian_lyapunov(const ModelParams& p,
                                         const LeadConfig& lc, double mu_d,
                                         Direction dir) {
    CurrentResult out;
    out.direction = dir;
    if (lc.gamma == 0.0) return out;

    LeadConfig drive = lc;
    const double minus_inf = -std::numeric_limits<double>::infinity();
    if (dir == Direction::left_to_right) {
        drive.mu_left = mu_d;
        drive.mu_right = minus_inf;
    } else {
        drive.mu_left = minus_inf;
        drive.mu_right = mu_d;
    }
    const Eigen::MatrixXcd c = lyapunov_steady_state(p, drive);
    const int n = p.n_sites;
    out.value = lc.gamma * ((dir == Direction::left_to_right)
                                ? c(n - 1, n - 1).real()
                                : c(0, 0).real());
    return out;
}

} // namespace nonrecip

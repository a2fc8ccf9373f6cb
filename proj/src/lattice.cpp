// lattice.cpp — tridiagonal resolvents: dense oracle and scaled recursions
#include "nonrecip/lattice.hpp"

#include <cmath>

namespace nonrecip {

TridiagonalSystem build_matrix(const ModelParams& p, const SelfEnergy& s, cplx z,
                               Leads leads, BoundaryModel boundary) {
    validate(p);
    const cplx zs = z + cplx{0.0, p.eta};
    const cplx G = gamma_of_z(p, s, zs);
    const Hoppings t = hoppings(p, s, zs);
    const cplx i{0.0, 1.0};

    TridiagonalSystem m;
    m.n = p.n_sites;
    m.diag = zs - eps_onsite(p, s, zs);
    m.diag_first = m.diag;
    m.diag_last = m.diag;
    m.off_upper = -t.t_minus;
    m.off_lower = -t.t_plus;

    if (boundary == BoundaryModel::microscopic) {
        // end sites couple to a single auxiliary neighbor: i*Gamma/2, not i*Gamma
        m.diag_first -= i * G * 0.5;
        m.diag_last -= i * G * 0.5;
    }
    if (leads == Leads::wide_band) {
        m.diag_first += i * (0.5 * p.gamma);
        m.diag_last += i * (0.5 * p.gamma);
    }
    return m;
}

Eigen::MatrixXcd to_dense(const TridiagonalSystem& m) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m.n, m.n);
    for (int i = 0; i < m.n; ++i) {
        a(i, i) = (i == 0) ? m.diag_first : (i == m.n - 1) ? m.diag_last : m.diag;
        if (i + 1 < m.n) {
            a(i, i + 1) = m.off_upper;
            a(i + 1, i) = m.off_lower;
        }
    }
    return a;
}

Eigen::MatrixXcd greens_dense(const Eigen::MatrixXcd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    for (int i = 0; i < n; ++i) {
        if (std::abs(lu.matrixLU()(i, i)) < 1e-300)
            throw singular_matrix_error("pivot collapse: resolvent evaluated on spectrum");
    }
    Eigen::MatrixXcd g = lu.solve(Eigen::MatrixXcd::Identity(n, n));
    const double scale = std::max(
        1.0, m.cwiseAbs().maxCoeff() * g.cwiseAbs().maxCoeff());
    const double resid =
        (m * g - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() / scale;
    if (!(resid <= 1e-10))
        throw numerical_error("dense inverse residual " + std::to_string(resid));
    return g;
}

namespace {

// Leading principal minors D_0..D_{k} of the tridiagonal matrix, stored as
// unit * exp(log_mag): values stay O(1), magnitudes live in the log.
struct ScaledSeq {
    std::vector<cplx> unit;     // unit[i] ~ D_{i-1} / exp(log_mag[i])
    std::vector<double> log_mag;
};

cplx diag_at(const TridiagonalSystem& m, int i) {
    return (i == 0) ? m.diag_first : (i == m.n - 1) ? m.diag_last : m.diag;
}

// forward: index k holds theta_{k-1} (theta_{-1} = 1); each slot carries its
// own log so entries on different scales combine exactly
ScaledSeq forward_exact(const TridiagonalSystem& m) {
    const cplx ab = m.off_upper * m.off_lower;
    ScaledSeq s;
    s.unit.resize(m.n + 1);
    s.log_mag.resize(m.n + 1);
    s.unit[0] = cplx{1.0, 0.0};
    s.log_mag[0] = 0.0;
    cplx prev{1.0, 0.0}, cur{1.0, 0.0};
    double lprev = 0.0, lcur = 0.0;
    for (int i = 0; i < m.n; ++i) {
        cplx next;
        double lnext;
        if (i == 0) {
            next = diag_at(m, 0);
            lnext = 0.0;
        } else {
            // combine on the larger scale to avoid overflow in the shift
            lnext = lcur;
            next = diag_at(m, i) * cur - ab * prev * std::exp(lprev - lcur);
        }
        const double mag = std::abs(next);
        if (mag > 0.0 && (mag > 1e50 || mag < 1e-50)) {
            next /= mag;
            lnext += std::log(mag);
        }
        prev = cur;
        lprev = lcur;
        cur = next;
        lcur = lnext;
        s.unit[i + 1] = cur;
        s.log_mag[i + 1] = lcur;
    }
    return s;
}

ScaledSeq backward_exact(const TridiagonalSystem& m) {
    const cplx ab = m.off_upper * m.off_lower;
    ScaledSeq s;                       // index k holds phi_k; phi_n = 1
    s.unit.resize(m.n + 1);
    s.log_mag.resize(m.n + 1);
    s.unit[m.n] = cplx{1.0, 0.0};
    s.log_mag[m.n] = 0.0;
    cplx prev{1.0, 0.0}, cur{1.0, 0.0};
    double lprev = 0.0, lcur = 0.0;
    for (int i = m.n - 1; i >= 0; --i) {
        cplx next;
        double lnext;
        if (i == m.n - 1) {
            next = diag_at(m, i);
            lnext = 0.0;
        } else {
            lnext = lcur;
            next = diag_at(m, i) * cur - ab * prev * std::exp(lprev - lcur);
        }
        const double mag = std::abs(next);
        if (mag > 0.0 && (mag > 1e50 || mag < 1e-50)) {
            next /= mag;
            lnext += std::log(mag);
        }
        prev = cur;
        lprev = lcur;
        cur = next;
        lcur = lnext;
        s.unit[i] = cur;
        s.log_mag[i] = lcur;
    }
    return s;
}

cplx assemble_element(const TridiagonalSystem& m, const ScaledSeq& th,
                      const ScaledSeq& ph, int row, int col) {
    // G_ij = (-1)^{i+j} b^{j-i} theta_{i-1} phi_{j+1} / theta_{n-1}   (i <= j)
    // G_ij = (-1)^{i+j} a^{i-j} theta_{j-1} phi_{i+1} / theta_{n-1}   (i > j)
    const int i = row, j = col;
    const cplx hop = (i <= j) ? m.off_upper : m.off_lower;
    const int k = std::abs(j - i);
    const int lo = std::min(i, j), hi = std::max(i, j);

    const cplx th_unit = th.unit[lo];            // theta_{lo-1}
    const cplx ph_unit = ph.unit[hi + 1];        // phi_{hi+1}
    const cplx det_unit = th.unit[m.n];          // theta_{n-1}
    if (det_unit == cplx{0.0, 0.0})
        throw singular_matrix_error("zero determinant in tridiagonal recursion");

    double log_total = th.log_mag[lo] + ph.log_mag[hi + 1] - th.log_mag[m.n];
    cplx unit = th_unit * ph_unit / det_unit;
    if ((i + j) % 2 == 1) unit = -unit;
    if (k > 0) {
        const double habs = std::abs(hop);
        if (habs == 0.0) return cplx{0.0, 0.0};
        log_total += k * std::log(habs);
        unit *= std::polar(1.0, k * std::arg(hop));
    }
    const double umag = std::abs(unit);
    if (umag == 0.0) return cplx{0.0, 0.0};
    log_total += std::log(umag);
    unit /= umag;
    if (log_total > 700.0)
        throw numerical_error("resolvent element overflows double range");
    if (log_total < -745.0) return cplx{0.0, 0.0};
    return unit * std::exp(log_total);
}

} // namespace

Eigen::MatrixXcd greens_tridiag_full(const TridiagonalSystem& m) {
    if (m.n > 10'000'000)
        throw std::invalid_argument("n_sites beyond recursion guard (1e7)");
    const ScaledSeq th = forward_exact(m);
    const ScaledSeq ph = backward_exact(m);
    Eigen::MatrixXcd g(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) g(i, j) = assemble_element(m, th, ph, i, j);
    return g;
}

cplx greens_element(const TridiagonalSystem& m, int row, int col) {
    if (row < 0 || col < 0 || row >= m.n || col >= m.n)
        throw std::invalid_argument("greens_element index out of range");
    if (m.n > 10'000'000)
        throw std::invalid_argument("n_sites beyond recursion guard (1e7)");
    const ScaledSeq th = forward_exact(m);
    const ScaledSeq ph = backward_exact(m);
    return assemble_element(m, th, ph, row, col);
}

LogElement greens_corner_log(const TridiagonalSystem& m, bool left_to_right) {
    // G_{n-1,0} = t_plus^{n-1} / det,  G_{0,n-1} = t_minus^{n-1} / det:
    // only the full determinant theta_{n-1} is needed.
    const cplx ab = m.off_upper * m.off_lower;
    cplx prev{1.0, 0.0}, cur = diag_at(m, 0);
    double lg = 0.0;
    for (int i = 1; i < m.n; ++i) {
        const cplx next = diag_at(m, i) * cur - ab * prev;
        prev = cur;
        cur = next;
        const double mag = std::abs(cur);
        if (mag > 1e100 || (mag > 0.0 && mag < 1e-100)) {
            cur /= mag;
            prev /= mag;
            lg += std::log(mag);
        }
    }
    if (cur == cplx{0.0, 0.0})
        throw singular_matrix_error("zero determinant in corner recursion");

    const cplx hop = left_to_right ? -m.off_lower : -m.off_upper;  // t_plus / t_minus
    const double habs = std::abs(hop);
    LogElement e;
    if (habs == 0.0) {
        e.log_mag = -std::numeric_limits<double>::infinity();
        e.phase = 0.0;
        return e;
    }
    e.log_mag = (m.n - 1) * std::log(habs) - (std::log(std::abs(cur)) + lg);
    e.phase = (m.n - 1) * std::arg(hop) - std::arg(cur);
    return e;
}

Eigen::MatrixXcd extended_greens_block(const ModelParams& p, const SelfEnergy& s,
                                       cplx z) {
    validate(p);
    if (s.kind == SelfEnergy::Kind::frozen_gamma)
        throw std::invalid_argument("extended system needs an explicit Sigma(z)");
    const int n = p.n_sites;
    const int dim = 2 * n - 1;
    const cplx zs = z + cplx{0.0, p.eta};
    const cplx i{0.0, 1.0};
    const cplx eph = std::exp(i * p.phi);

    // M = z*I - H for chain sites 0..n-1 and auxiliary sites n..2n-2
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int j = 0; j < n; ++j) m(j, j) = zs - p.delta_c;
    for (int j = 0; j < n - 1; ++j) {
        m(j, j + 1) = p.g;
        m(j + 1, j) = p.g;
        const int a = n + j;
        m(a, a) = zs - p.delta_b + i * s(zs);
        m(j, a) = -p.g_b;
        m(a, j) = -p.g_b;
        m(a, j + 1) = -p.g_b * eph;
        m(j + 1, a) = -p.g_b * std::conj(eph);
    }
    return greens_dense(m).topLeftCorner(n, n);
}

TransferMatrix transfer_matrix(const ModelParams& p, const SelfEnergy& s, cplx z) {
    const cplx zs = z + cplx{0.0, p.eta};
    const Hoppings t = hoppings(p, s, zs);
    return TransferMatrix{zs - eps_onsite(p, s, zs), -t.t_plus * t.t_minus,
                          cplx{1.0, 0.0}, cplx{0.0, 0.0}};
}

ScalingFactors scaling_factors(const ModelParams& p, const SelfEnergy& s,
                               double omega) {
    const cplx z{omega, 0.0};
    const TransferMatrix tm = transfer_matrix(p, s, z);
    const Hoppings t = hoppings(p, s, z + cplx{0.0, p.eta});
    const cplx d = tm.t11;
    const cplx det = -tm.t12;  // t_plus * t_minus

    // larger root of l^2 - d*l + det, companion root via the product
    const cplx sq = std::sqrt(d * d - 4.0 * det);
    const cplx l_a = 0.5 * (d + sq);
    const cplx l_b = 0.5 * (d - sq);
    cplx dominant = (std::abs(l_a) >= std::abs(l_b)) ? l_a : l_b;
    cplx other = (std::abs(dominant) > 0.0) ? det / dominant : l_b;

    ScalingFactors f;
    f.lambda_dominant = dominant;
    f.degenerate =
        std::abs(std::abs(dominant) - std::abs(other)) < 1e-10 * std::abs(dominant);
    const double lam = std::abs(dominant);
    f.f_plus = (lam > 0.0) ? std::abs(t.t_plus) / lam : 0.0;
    f.f_minus = (lam > 0.0) ? std::abs(t.t_minus) / lam : 0.0;
    return f;
}

Eigen::MatrixXcd markovian_heff(const ModelParams& p, double gamma_const) {
    validate(p);
    const Hoppings t = markovian_hoppings(p, gamma_const);
    const int n = p.n_sites;
    const cplx diag = cplx{p.delta_c, 0.0} - cplx{0.0, gamma_const};
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = diag;
        if (i + 1 < n) {
            h(i, i + 1) = t.t_minus;
            h(i + 1, i) = t.t_plus;
        }
    }
    return h;
}

} // namespace nonrecip

// analysis.cpp — scaling fits, crossover detection, skin-mode diagnostics
#include "nonrecip/analysis.hpp"

#include <cmath>

#include "nonrecip/parallel.hpp"

namespace nonrecip {

FitResult fit_scaling(const std::vector<double>& n_sites,
                      const std::vector<double>& currents, FitModel model) {
    const std::size_t m = n_sites.size();
    if (m < 4 || currents.size() != m)
        throw degenerate_fit_error("scaling fit needs at least four samples");
    for (std::size_t i = 0; i < m; ++i) {
        if (!(currents[i] > 0.0))
            throw degenerate_fit_error("scaling fit needs positive currents");
        if (i > 0 && !(n_sites[i] > n_sites[i - 1]))
            throw degenerate_fit_error("scaling fit needs increasing sizes");
    }

    std::vector<double> x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
        x[i] = (model == FitModel::power_law) ? std::log(n_sites[i]) : n_sites[i];
        y[i] = std::log(currents[i]);
    }

    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / static_cast<double>(m);
    const double my = sy / static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0)
        throw degenerate_fit_error("scaling fit abscissae are constant");

    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = y[i] - (slope * x[i] + intercept);
        ss_res += r * r;
    }

    FitResult out;
    out.model = model;
    out.parameter = (model == FitModel::power_law) ? slope : -slope;
    out.prefactor = std::exp(intercept);
    out.r_squared = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
    return out;
}

NdqptCurve ndqpt_scan(const ModelParams& p, const SelfEnergy& s,
                      const LeadConfig& lc,
                      const std::vector<double>& mu_grid) {
    NdqptCurve out;
    out.mu_d_values = mu_grid;
    out.n_sites = p.n_sites;
    out.scaled_current.assign(mu_grid.size(), 0.0);
    const double root_n = std::sqrt(static_cast<double>(p.n_sites));
    parallel_for(static_cast<int>(mu_grid.size()), [&](int i) {
        const CurrentResult r = current_nonmarkovian(
            p, s, lc, mu_grid[i], Direction::left_to_right);
        out.scaled_current[i] = root_n * r.value;
    });
    return out;
}

double crossover_mu(const std::vector<double>& mu_d_values,
                    const std::vector<double>& values) {
    const std::size_t m = mu_d_values.size();
    if (m < 2 || values.size() != m)
        throw std::invalid_argument("crossover needs two aligned samples");
    double best = -1.0;
    double where = mu_d_values.front();
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double dx = mu_d_values[i + 1] - mu_d_values[i];
        if (dx == 0.0) continue;
        const double slope = std::abs((values[i + 1] - values[i]) / dx);
        if (slope > best) {
            best = slope;
            where = 0.5 * (mu_d_values[i] + mu_d_values[i + 1]);
        }
    }
    return where;
}

Eigen::MatrixXcd hn_hopping_matrix(int n, cplx t_plus, cplx t_minus,
                                   cplx diag) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        h(j, j) = diag;
        if (j + 1 < n) {
            h(j + 1, j) = t_plus;
            h(j, j + 1) = t_minus;
        }
    }
    return h;
}

double skin_measure(const Eigen::MatrixXcd& h) {
    const int n = static_cast<int>(h.rows());
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw defective_matrix_error("eigendecomposition failed");
    const Eigen::MatrixXcd v = es.eigenvectors();
    const Eigen::MatrixXcd vinv =
        v.partialPivLu().solve(Eigen::MatrixXcd::Identity(n, n));
    const double cond = v.cwiseAbs().colwise().sum().maxCoeff() *
                        vinv.cwiseAbs().colwise().sum().maxCoeff();
    if (cond > 1e12)
        throw defective_matrix_error("eigenbasis too ill-conditioned");

    double acc = 0.0;
    for (int m = 0; m < n; ++m) {
        double norm = 0.0, moment = 0.0;
        for (int j = 0; j < n; ++j) {
            const double w = std::norm(v(j, m));
            norm += w;
            moment += static_cast<double>(j + 1) * w;
        }
        acc += moment / norm;
    }
    return acc / static_cast<double>(n);
}

} // namespace nonrecip

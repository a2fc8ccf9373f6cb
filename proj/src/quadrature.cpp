// quadrature.cpp — G7/K15 panels, worst-first refinement, deterministic sums
#include "nonrecip/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace nonrecip {
namespace {

// Kronrod-15 abscissae on [-1,1] (symmetric) and weights; odd-index nodes
// form the embedded Gauss-7 rule.
constexpr double xk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a, b;
    double integral;
    double err;
    int depth;
};

Panel evaluate(const std::function<double(double)>& f, double a, double b,
               int depth, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * xk[i]);
        fv[14 - i] = f(c + h * xk[i]);
    }
    fv[7] = f(c);
    evals += 15;

    double k15 = wk[7] * fv[7];
    for (int i = 0; i < 7; ++i) k15 += wk[i] * (fv[i] + fv[14 - i]);
    double g7 = wg[3] * fv[7];
    for (int i = 0; i < 3; ++i) g7 += wg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    return Panel{a, b, k15 * h, std::abs(k15 - g7) * h, depth};
}

struct WorstFirst {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.a > y.a;   // deterministic tie-break
    }
};

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt) {
    QuadResult res;
    if (!(b > a)) return res;

    std::vector<double> edges{a, b};
    for (double s : opt.split_points)
        if (s > a && s < b) edges.push_back(s);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Panel, std::vector<Panel>, WorstFirst> queue;
    double total = 0.0, total_err = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = evaluate(f, edges[i], edges[i + 1], 0, res.evaluations);
        total += p.integral;
        total_err += p.err;
        queue.push(p);
    }

    while (total_err > std::max(opt.atol, opt.rtol * std::abs(total))) {
        Panel worst = queue.top();
        queue.pop();
        if (worst.depth >= opt.max_depth) {
            std::ostringstream msg;
            msg << "quadrature stalled on panel [" << worst.a << ", " << worst.b
                << "] with error " << worst.err << " after depth " << worst.depth;
            throw quadrature_convergence_error(msg.str());
        }
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = evaluate(f, worst.a, mid, worst.depth + 1, res.evaluations);
        Panel right = evaluate(f, mid, worst.b, worst.depth + 1, res.evaluations);
        total += left.integral + right.integral - worst.integral;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
    }

    // re-sum accepted panels left to right (Neumaier) for a run-stable value
    std::vector<Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double sum = 0.0, comp = 0.0, errsum = 0.0;
    for (const Panel& p : panels) {
        const double t = sum + p.integral;
        comp += (std::abs(sum) >= std::abs(p.integral)) ? (sum - t) + p.integral
                                                        : (p.integral - t) + sum;
        sum = t;
        errsum += p.err;
    }
    res.value = sum + comp;
    res.error = errsum;
    return res;
}

} // namespace nonrecip

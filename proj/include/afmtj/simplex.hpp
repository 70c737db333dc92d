#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace afmtj {

struct SimplexOptions {
    std::size_t max_evals = 500;
    double f_tol = 1e-10;      // spread of simplex values at convergence
    double init_step = 0.15;   // relative displacement building the start simplex
};

struct SimplexResult {
    std::vector<double> x;
    double fx = 0.0;
    std::size_t evals = 0;
    bool converged = false;
};

// Deterministic Nelder-Mead with the standard reflection/expansion/
// contraction/shrink coefficients (1, 2, 0.5, 0.5).
inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                 const std::vector<double>& x0, const SimplexOptions& opts) {
    const std::size_t n = x0.size();
    SimplexResult res;
    if (n == 0) {
        res.x = x0;
        res.fx = f(x0);
        res.evals = 1;
        res.converged = true;
        return res;
    }

    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        double& xi = pts[i + 1][i];
        xi += (xi != 0.0 ? opts.init_step * xi : opts.init_step);
    }

    std::size_t evals = 0;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = f(pts[i]);
        ++evals;
    }

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    };

    while (evals < opts.max_evals) {
        sort_simplex();
        const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];
        if (fv[worst] - fv[best] < opts.f_tol) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d] / double(n);
        }

        auto blend = [&](double coef) {
            std::vector<double> x(n);
            for (std::size_t d = 0; d < n; ++d)
                x[d] = centroid[d] + coef * (centroid[d] - pts[worst][d]);
            return x;
        };

        const std::vector<double> xr = blend(1.0);
        const double fr = f(xr);
        ++evals;

        if (fr < fv[order[0]]) {
            const std::vector<double> xe = blend(2.0);
            const double fe = f(xe);
            ++evals;
            if (fe < fr) {
                pts[worst] = xe;
                fv[worst] = fe;
            } else {
                pts[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second_worst]) {
            pts[worst] = xr;
            fv[worst] = fr;
        } else {
            const std::vector<double> xc = blend(fr < fv[worst] ? 0.5 : -0.5);
            const double fc = f(xc);
            ++evals;
            if (fc < std::min(fr, fv[worst])) {
                pts[worst] = xc;
                fv[worst] = fc;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < n; ++d)
                        pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
                    fv[i] = f(pts[i]);
                    ++evals;
                }
            }
        }
    }

    sort_simplex();
    res.x = pts[order[0]];
    res.fx = fv[order[0]];
    res.evals = evals;
    return res;
}

}  // namespace afmtj

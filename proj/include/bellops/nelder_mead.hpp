#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace bellops {

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
};

struct SimplexOptions {
    double initial_step = 0.5;
    double diameter_tol = 1e-10;
    std::size_t max_evaluations = 50000;
};

// Nelder-Mead downhill simplex, minimizing. Deterministic given the start
// point; convergence when the simplex diameter drops below diameter_tol or
// the evaluation budget is spent.
inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> start, const SimplexOptions& opt = {}) {
    const std::size_t n = start.size();
    std::size_t evals = 0;
    auto eval = [&](const std::vector<double>& p) {
        ++evals;
        return f(p);
    };

    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i + 1][i] += opt.initial_step;
    }
    for (std::size_t i = 0; i <= n; ++i) {
        vals[i] = eval(pts[i]);
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    std::vector<std::size_t> order(n + 1);

    while (evals < opt.max_evaluations) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order[0], worst = order[n], second = order[n - 1];

        double diameter = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                diameter = std::max(diameter, std::abs(pts[order[i]][k] - pts[best][k]));
            }
        }
        if (diameter < opt.diameter_tol) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k];
        }
        for (std::size_t k = 0; k < n; ++k) centroid[k] /= static_cast<double>(n);

        auto mix = [&](double c) {
            std::vector<double> p(n);
            for (std::size_t k = 0; k < n; ++k) {
                p[k] = centroid[k] + c * (centroid[k] - pts[worst][k]);
            }
            return p;
        };

        std::vector<double> refl = mix(alpha);
        double frefl = eval(refl);
        if (frefl < vals[best]) {
            std::vector<double> exp_pt = mix(gamma);
            double fexp = eval(exp_pt);
            if (fexp < frefl) {
                pts[worst] = std::move(exp_pt);
                vals[worst] = fexp;
            } else {
                pts[worst] = std::move(refl);
                vals[worst] = frefl;
            }
        } else if (frefl < vals[second]) {
            pts[worst] = std::move(refl);
            vals[worst] = frefl;
        } else {
            std::vector<double> contr = mix(frefl < vals[worst] ? rho : -rho);
            double fcontr = eval(contr);
            if (fcontr < std::min(frefl, vals[worst])) {
                pts[worst] = std::move(contr);
                vals[worst] = fcontr;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < n; ++k) {
                        pts[i][k] = pts[best][k] + sigma * (pts[i][k] - pts[best][k]);
                    }
                    vals[i] = eval(pts[i]);
                    if (evals >= opt.max_evaluations) break;
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (vals[i] < vals[best]) best = i;
    }
    return SimplexResult{pts[best], vals[best], evals};
}

}  // namespace bellops

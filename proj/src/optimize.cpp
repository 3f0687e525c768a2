// Copyright 2026 The qsv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qsv/optimize.hpp"

#include "qsv/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsv {

OptimizeResult minimize_nelder_mead(const Objective &f, std::vector<double> x0,
                                    const OptimizerConfig &config) {
    constexpr double kReflect = 1.0;
    constexpr double kExpand = 2.0;
    constexpr double kContract = 0.5;
    constexpr double kShrink = 0.5;
    constexpr double kZeroStep = 0.00025;

    if (config.max_evals < 1) {
        throw ShapeError("max_evals must be at least 1");
    }
    for (double v : x0) {
        if (!std::isfinite(v)) {
            throw NumericError("initial point is not finite");
        }
    }

    std::size_t evals = 0;
    auto eval = [&](const std::vector<double> &x) {
        ++evals;
        const double v = f(x);
        if (!std::isfinite(v)) {
            throw NumericError("objective returned a non-finite value");
        }
        return v;
    };

    const std::size_t n = x0.size();
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> values(n + 1);
    values[0] = eval(x0);
    if (n == 0) {
        return {values[0], x0, evals};
    }
    for (std::size_t k = 0; k < n; ++k) {
        auto &v = simplex[k + 1];
        v[k] = v[k] != 0.0 ? (1.0 + config.simplex_scale) * v[k] : kZeroStep;
        if (evals >= config.max_evals) {
            // Budget exhausted before the simplex is complete.
            return {values[0], x0, evals};
        }
        values[k + 1] = eval(v);
    }

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<std::vector<double>> s(n + 1);
        std::vector<double> fv(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s[i] = std::move(simplex[order[i]]);
            fv[i] = values[order[i]];
        }
        simplex = std::move(s);
        values = std::move(fv);
    };
    sort_simplex();

    auto converged = [&] {
        double f_spread = 0.0;
        double x_spread = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            f_spread = std::max(f_spread, std::abs(values[i] - values[0]));
            for (std::size_t k = 0; k < n; ++k) {
                x_spread = std::max(x_spread, std::abs(simplex[i][k] - simplex[0][k]));
            }
        }
        return x_spread <= config.x_tol && f_spread <= config.f_tol;
    };

    auto affine = [&](const std::vector<double> &c, const std::vector<double> &x, double t) {
        // c + t (x - c)
        std::vector<double> out(n);
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = c[k] + t * (x[k] - c[k]);
        }
        return out;
    };

    std::vector<double> centroid(n);
    while (evals < config.max_evals && !converged()) {
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                centroid[k] += simplex[i][k];
            }
        }
        for (double &c : centroid) {
            c /= static_cast<double>(n);
        }
        const auto &worst = simplex[n];

        const auto xr = affine(centroid, worst, -kReflect);
        const double fr = eval(xr);
        bool shrink = false;
        if (fr < values[0]) {
            if (evals >= config.max_evals) {
                simplex[n] = xr;
                values[n] = fr;
            } else {
                const auto xe = affine(centroid, worst, -kReflect * kExpand);
                const double fe = eval(xe);
                if (fe < fr) {
                    simplex[n] = xe;
                    values[n] = fe;
                } else {
                    simplex[n] = xr;
                    values[n] = fr;
                }
            }
        } else if (fr < values[n - 1]) {
            simplex[n] = xr;
            values[n] = fr;
        } else if (evals < config.max_evals) {
            if (fr < values[n]) {
                const auto xc = affine(centroid, xr, kContract);
                const double fc = eval(xc);
                if (fc <= fr) {
                    simplex[n] = xc;
                    values[n] = fc;
                } else {
                    shrink = true;
                }
            } else {
                const auto xcc = affine(centroid, worst, kContract);
                const double fcc = eval(xcc);
                if (fcc < values[n]) {
                    simplex[n] = xcc;
                    values[n] = fcc;
                } else {
                    shrink = true;
                }
            }
        }
        if (shrink) {
            for (std::size_t i = 1; i <= n && evals < config.max_evals; ++i) {
                simplex[i] = affine(simplex[0], simplex[i], kShrink);
                values[i] = eval(simplex[i]);
            }
        }
        sort_simplex();
    }
    return {values[0], simplex[0], evals};
}

} // namespace qsv

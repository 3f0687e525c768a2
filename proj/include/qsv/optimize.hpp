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
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qsv {

struct OptimizerConfig {
    std::size_t max_evals = 2000;
    /// Converged once every vertex is within x_tol (max-norm) of the best
    /// one and every vertex value within f_tol of the best value.
    double x_tol = 1e-8;
    double f_tol = 1e-12;
    /// Relative step of the initial simplex; zero coordinates step by 0.00025.
    double simplex_scale = 0.1;
};

struct OptimizeResult {
    double f_min = 0.0;
    std::vector<double> x_min;
    std::size_t evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free Nelder-Mead minimization with reflection 1, expansion 2,
/// contraction 0.5 and shrink 0.5. Deterministic; never returns a value
/// above f(x0). Throws NumericError if f returns a non-finite value.
OptimizeResult minimize_nelder_mead(const Objective &f, std::vector<double> x0,
                                    const OptimizerConfig &config = {});

} // namespace qsv

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

#include "qsv/circuit.hpp"
#include "qsv/hamiltonian.hpp"
#include "qsv/optimize.hpp"

#include <vector>

namespace qsv {

/// A parameterized ansatz paired with the Hamiltonian whose ground state it
/// approximates.
struct VQEProblem {
    Circuit ansatz;
    Hamiltonian hamiltonian;

    VQEProblem(Circuit ansatz, Hamiltonian hamiltonian);

    /// <H> of the ansatz state at `params`.
    double energy(std::span<const double> params) const;
};

struct VQEResult {
    double energy = 0.0;
    std::vector<double> params;
    std::size_t evaluations = 0;
};

/// Nelder-Mead over the ansatz parameters, starting at x0.
VQEResult vqe_minimize(const VQEProblem &problem, std::vector<double> x0,
                       const OptimizerConfig &config = {});

struct AAVQEResult {
    double energy = 0.0;
    std::vector<double> params;
    /// Optimized energy after each adiabatic step t = 0..T_max.
    std::vector<double> step_energies;
};

/// Adiabatically assisted VQE: for t = 0..T_max, minimizes the energy of
/// (1 - s) h0 + s h1 with s = t / T_max (s = 0 when T_max = 0), warm-starting
/// each step from the previous optimum with at most `maxsteps` evaluations.
AAVQEResult aavqe(const Hamiltonian &h0, const Hamiltonian &h1, const Circuit &ansatz,
                  std::vector<double> x0, int T_max, std::size_t maxsteps,
                  OptimizerConfig config = {});

} // namespace qsv

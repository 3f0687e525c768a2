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
#include "qsv/variational.hpp"

#include "qsv/error.hpp"

namespace qsv {

VQEProblem::VQEProblem(Circuit a, Hamiltonian h) : ansatz(std::move(a)), hamiltonian(std::move(h)) {
    if (ansatz.n_qubits() != hamiltonian.n_qubits()) {
        throw ShapeError("ansatz and Hamiltonian act on different qubit counts");
    }
}

double VQEProblem::energy(std::span<const double> params) const {
    Circuit c = ansatz;
    c.set_parameters(params);
    return expectation(hamiltonian, execute<double>(c));
}

VQEResult vqe_minimize(const VQEProblem &problem, std::vector<double> x0,
                       const OptimizerConfig &config) {
    if (x0.size() != problem.ansatz.parameter_count()) {
        throw ArityError("ansatz has " + std::to_string(problem.ansatz.parameter_count()) +
                         " parameters, got " + std::to_string(x0.size()));
    }
    const OptimizeResult r = minimize_nelder_mead(
        [&](std::span<const double> p) { return problem.energy(p); }, std::move(x0), config);
    return {r.f_min, r.x_min, r.evaluations};
}

AAVQEResult aavqe(const Hamiltonian &h0, const Hamiltonian &h1, const Circuit &ansatz,
                  std::vector<double> x0, int T_max, std::size_t maxsteps,
                  OptimizerConfig config) {
    if (T_max < 0) {
        throw ShapeError("T_max must be non-negative");
    }
    config.max_evals = maxsteps;
    AAVQEResult out;
    std::vector<double> params = std::move(x0);
    for (int t = 0; t <= T_max; ++t) {
        const double s = T_max == 0 ? 0.0 : static_cast<double>(t) / T_max;
        const VQEProblem problem(ansatz, combine(h0, 1.0 - s, h1, s));
        VQEResult r = vqe_minimize(problem, std::move(params), config);
        params = std::move(r.params);
        out.energy = r.energy;
        out.step_energies.push_back(r.energy);
    }
    out.params = std::move(params);
    return out;
}

} // namespace qsv

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

#include "qsv/callbacks.hpp"
#include "qsv/circuit.hpp"
#include "qsv/hamiltonian.hpp"
#include "qsv/optimize.hpp"
#include "qsv/state_vector.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qsv {

enum class Solver { Exp, RK4, RK45, Trotter };

std::string_view solver_name(Solver s);
std::optional<Solver> solver_from_name(std::string_view name);

struct EvolutionConfig {
    Solver solver = Solver::Exp;
    double dt = 1e-2;
    double T = 1.0;
    /// Trotter circuits may run on the sharded executor.
    std::size_t shards = 1;
    int workers = 1;
};

/// Interpolation s(tau) on tau = t / T with s(0) = 0 and s(1) = 1.
class Schedule {
  public:
    static Schedule linear();
    /// s(tau) = sum_k c_k tau^(k+1) / sum_k c_k. Throws DegenerateInputError
    /// if the coefficients sum to zero.
    static Schedule polynomial(std::vector<double> coefficients);

    double operator()(double tau) const;
    bool is_linear() const { return coefficients_.empty(); }
    const std::vector<double> &coefficients() const { return coefficients_; }

  private:
    std::vector<double> coefficients_;
    double norm_ = 1.0;
};

using HamiltonianFn = std::function<Hamiltonian(double)>;

/**
 * Integrates i d/dt psi = H(t) psi from 0 to config.T.
 *
 * Exp exponentiates the dense H at each step midpoint through its
 * eigendecomposition; RK4 and RK45 (Dormand-Prince, fixed step) integrate the
 * dense H; Trotter runs the symmetric split step circuit of the term-list H at
 * each step midpoint. A final shorter step covers T mod dt. Callbacks are
 * evaluated at t = 0 and after every step.
 */
StateVector<double> evolve(const HamiltonianFn &h_of_t, StateVector<double> psi0,
                           const EvolutionConfig &config,
                           std::span<Callback *const> callbacks = {});

/// Time-independent H; the Exp solver reuses a single eigendecomposition.
StateVector<double> evolve(const Hamiltonian &h, StateVector<double> psi0,
                           const EvolutionConfig &config,
                           std::span<Callback *const> callbacks = {});

/// Splits the terms into groups of disjoint support (first fit, in term
/// order) G_1..G_m and emits e^{-iG_1 dt/2} ... e^{-iG_m dt} ... e^{-iG_1 dt/2}
/// as Unitary gates.
Circuit trotter_step_circuit(const TrotterHamiltonian &h, double dt);

/// Evolves under (1 - s(t/T)) h0 + s(t/T) h1 starting from psi0, or from the
/// ground state of h0 when psi0 is not given.
StateVector<double> adiabatic_evolve(const Hamiltonian &h0, const Hamiltonian &h1,
                                     const Schedule &s, const EvolutionConfig &config,
                                     std::span<Callback *const> callbacks = {},
                                     std::optional<StateVector<double>> psi0 = std::nullopt);

struct ScheduleOptimum {
    std::vector<double> coefficients;
    double T = 0.0;
    double energy = 0.0;
    double initial_energy = 0.0;
    std::size_t evaluations = 0;
};

/// Minimizes <h1> of the adiabatic final state over the polynomial schedule
/// coefficients and the total time T (starting from T0).
ScheduleOptimum optimize_schedule(const Hamiltonian &h0, const Hamiltonian &h1,
                                  std::vector<double> coefficients0, double T0,
                                  const EvolutionConfig &config,
                                  const OptimizerConfig &optimizer = {});

} // namespace qsv

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

#include "qsv/hamiltonian.hpp"
#include "qsv/state_vector.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qsv {

enum class CallbackKind { Energy, Overlap, Gap, EntanglementEntropy };

/**
 * A quantity evaluated on intermediate states, with its time-ordered records.
 *
 * - Energy: <psi|H|psi> for a fixed H.
 * - Overlap: |<target|psi>|.
 * - Gap: lambda_1 - lambda_0 of the Hamiltonian driving the evolution at the
 *   evaluation point (or of a fixed Hamiltonian when used in a circuit).
 * - EntanglementEntropy: von Neumann entropy (bits) of a qubit partition.
 */
class Callback {
  public:
    static Callback energy(Hamiltonian h);
    static Callback overlap(StateVector<double> target);
    static Callback gap(std::optional<Hamiltonian> h = std::nullopt);
    static Callback entanglement_entropy(std::vector<int> partition);

    CallbackKind kind() const { return kind_; }

    /// `current` is the Hamiltonian in effect at this point, if any.
    double evaluate(const StateVector<double> &state, const Hamiltonian *current = nullptr) const;

    /// Evaluates and appends to the records.
    void record(double time, const StateVector<double> &state,
                const Hamiltonian *current = nullptr);

    const std::vector<double> &records() const { return records_; }
    const std::vector<double> &times() const { return times_; }
    void clear();

  private:
    explicit Callback(CallbackKind kind) : kind_(kind) {}

    CallbackKind kind_;
    std::optional<Hamiltonian> hamiltonian_;
    std::optional<StateVector<double>> target_;
    std::vector<int> partition_;
    std::vector<double> records_;
    std::vector<double> times_;
};

/// -sum_i s_i^2 log2 s_i^2 over the Schmidt values of the bipartition
/// (partition, complement). Requires 1 <= |partition| <= n - 1.
double entanglement_entropy(const StateVector<double> &state, std::span<const int> partition);

} // namespace qsv

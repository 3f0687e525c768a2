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

#include "qsv/state_vector.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qsv {

/**
 * Shots sampled from a final state.
 *
 * Each sample is an integer over the measured qubits only, with qubits[0] as
 * the most significant bit.
 */
struct MeasurementResult {
    std::size_t n_shots = 0;
    std::vector<int> qubits;
    std::vector<std::uint64_t> samples;
    std::map<std::string, std::vector<int>> registers;
    std::uint64_t seed = 0;
    /// Identifies the generator so runs can be reproduced.
    std::string rng = "mt19937_64+splitmix64-blocks";

    /// Binary view of sample i ("0110"), qubits[0] first.
    std::string binary(std::size_t i) const;

    /// Adds a register; its qubits must be a subset of the measured qubits.
    void add_register(std::string name, std::vector<int> qubits);
};

/// Marginal probabilities over `qubits`, summing |psi|^2 over the rest.
template <typename Real>
std::vector<double> marginal_probabilities(const StateVector<Real> &state,
                                           std::span<const int> qubits);

/// Draws n_shots i.i.d. outcomes from the marginal distribution. Output
/// depends only on (state, qubits, n_shots, seed).
template <typename Real>
MeasurementResult sample(const StateVector<Real> &state, std::vector<int> qubits,
                         std::size_t n_shots, std::uint64_t seed);

/// Outcome counts; with a register, samples are projected onto the
/// register's qubits in register order. Throws LookupError for unknown names.
std::map<std::uint64_t, std::size_t> frequencies(const MeasurementResult &result,
                                                 const std::optional<std::string> &reg = {});

/// Same counts keyed by bit strings.
std::map<std::string, std::size_t>
binary_frequencies(const MeasurementResult &result, const std::optional<std::string> &reg = {});

} // namespace qsv

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

#include "qsv/gate.hpp"
#include "qsv/state_vector.hpp"

#include <Eigen/Dense>

#include <complex>
#include <span>

namespace qsv {

/// Applies a gate in place. Amplitudes whose control bits are not all 1 are
/// left untouched; no state-sized temporary is allocated.
template <typename Real> void apply_gate(StateVector<Real> &state, const GateSpec &spec);

/// Same as apply_gate, but forces the kernel path. General is valid for any
/// gate; the fast paths throw unless the matrix has that structure.
template <typename Real>
void apply_gate(StateVector<Real> &state, const GateSpec &spec, KernelClass path);

namespace detail {

/// Raw kernel over an n-qubit amplitude span. Targets index the rows of
/// `matrix` (first target = most significant). Uses `threads` workers.
template <typename Real>
void apply_matrix(std::span<std::complex<Real>> amplitudes, int n_qubits,
                  std::span<const int> targets, std::span<const int> controls,
                  const Eigen::MatrixXcd &matrix, KernelClass path, int threads);

/// Exchanges two qubit slots of the amplitude layout (pure data movement).
template <typename Real>
void swap_qubit_slots(std::span<std::complex<Real>> amplitudes, int n_qubits, int a, int b,
                      int threads);

} // namespace detail

extern template void apply_gate<float>(StateVector<float> &, const GateSpec &);
extern template void apply_gate<double>(StateVector<double> &, const GateSpec &);

} // namespace qsv

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

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsv {

enum class GateKind { H, X, Y, Z, RX, RY, RZ, CZPow, CNOT, CZ, SWAP, Unitary, VariationalLayer };

/// Sparsity class of a gate matrix, selecting the kernel path.
enum class KernelClass { General, Diagonal, Permutation };

std::string_view gate_name(GateKind kind);
/// Inverse of gate_name; returns nullopt for unknown names.
std::optional<GateKind> gate_kind_from_name(std::string_view name);

/// Number of real parameters a gate of this kind carries (VariationalLayer: 4).
std::size_t parameter_count(GateKind kind);
/// Number of target qubits a kind requires; 0 means "1 or 2" (Unitary).
int target_count(GateKind kind);

/**
 * A gate: kind, ordered targets, controls and real parameters.
 *
 * The first target is the most significant index of the gate matrix. Two-qubit
 * kinds (CNOT, CZ, CZPow, SWAP, VariationalLayer) take both qubits as targets;
 * for CNOT the first target is the control qubit of the 4x4 matrix. Any gate
 * may carry additional controls, applied as a projector on |1...1>.
 */
struct GateSpec {
    GateKind kind = GateKind::H;
    std::vector<int> targets;
    std::vector<int> controls;
    std::vector<double> params;
    /// Explicit matrix for Unitary; cached fused matrix for VariationalLayer.
    std::optional<Eigen::MatrixXcd> matrix;

    /// All qubits the gate touches: targets then controls.
    std::vector<int> support() const;
    bool is_parameterized() const { return !params.empty(); }

    friend bool operator==(const GateSpec &a, const GateSpec &b);
};

/// Validates index ranges, distinctness, arity and (for Unitary) unitarity
/// within 1e-8. Throws ShapeError, ArityError or MissingMatrixError.
void validate(const GateSpec &spec, int n_qubits);

/// The gate's 2^t x 2^t unitary, excluding controls.
Eigen::MatrixXcd gate_matrix(const GateSpec &spec);

KernelClass kernel_class(const Eigen::MatrixXcd &matrix);
KernelClass kernel_class(const GateSpec &spec);

/// Rebinds parameters, recomputing any cached matrix.
void set_gate_parameters(GateSpec &spec, std::span<const double> params);

/// Adjoint gate (matrix conjugate-transposed, same qubits).
GateSpec adjoint(const GateSpec &spec);

namespace gates {

GateSpec H(int q);
GateSpec X(int q);
GateSpec Y(int q);
GateSpec Z(int q);
GateSpec RX(int q, double theta);
GateSpec RY(int q, double theta);
GateSpec RZ(int q, double theta);
GateSpec CNOT(int control, int target);
GateSpec CZ(int q0, int q1);
/// diag(1, 1, 1, e^{i theta}).
GateSpec CZPow(int q0, int q1, double theta);
GateSpec SWAP(int q0, int q1);
GateSpec Unitary(std::vector<int> targets, Eigen::MatrixXcd matrix);
/// (RY(c) x RY(d)) CZ (RY(a) x RY(b)) on (q0, q1), params {a, b, c, d}.
GateSpec VariationalLayer(int q0, int q1, std::span<const double> params);

/// Returns `gate` with extra control qubits.
GateSpec controlled(GateSpec gate, std::vector<int> controls);

} // namespace gates

} // namespace qsv

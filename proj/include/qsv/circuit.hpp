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
#include "qsv/gate.hpp"
#include "qsv/state_vector.hpp"

#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace qsv {

/// A callback evaluated right after the gate at queue position `after_gate`.
struct AttachedCallback {
    std::size_t after_gate = 0;
    Callback *callback = nullptr;
};

/// A queue of gates on a fixed number of qubits, plus named measurement
/// registers.
class Circuit {
  public:
    explicit Circuit(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return queue_.size(); }
    bool empty() const { return queue_.empty(); }
    const std::vector<GateSpec> &queue() const { return queue_; }
    const GateSpec &operator[](std::size_t i) const { return queue_[i]; }

    /// Validates and appends.
    Circuit &add(GateSpec gate);
    Circuit &add(std::initializer_list<GateSpec> gates);

    /// Registers a named group of distinct qubits for measurement.
    void add_register(std::string name, std::vector<int> qubits);
    const std::map<std::string, std::vector<int>> &registers() const { return registers_; }

    /// Total number of gate parameters, in queue order.
    std::size_t parameter_count() const;
    std::vector<double> parameters() const;
    /// Rebinds parameterized gates in queue order. Throws ArityError on a
    /// length mismatch.
    void set_parameters(std::span<const double> params);

    /// The inverse circuit: adjoint gates in reverse order.
    Circuit inverse() const;

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    int n_qubits_;
    std::vector<GateSpec> queue_;
    std::map<std::string, std::vector<int>> registers_;
};

/// Runs the queue on `initial` (moved in and updated in place).
template <typename Real>
StateVector<Real> execute(const Circuit &circuit, StateVector<Real> initial,
                          std::span<const AttachedCallback> callbacks = {});

/// Runs the queue on |0...0>.
template <typename Real = double>
StateVector<Real> execute(const Circuit &circuit,
                          std::span<const AttachedCallback> callbacks = {}) {
    return execute<Real>(circuit, new_zero_state<Real>(circuit.n_qubits()), callbacks);
}

/// A fused block: its qubit support (ascending), matrix and source positions.
struct FusedGate {
    std::vector<int> support;
    Eigen::MatrixXcd matrix;
    std::vector<std::size_t> origin;
};

/// Greedy left-to-right fusion into blocks of at most two qubits. Controls
/// count as support; gates with wider support are emitted unfused.
std::vector<std::variant<FusedGate, std::size_t>> fuse_blocks(const Circuit &circuit);

/// Circuit of Unitary gates built from fuse_blocks. Never longer than the input.
Circuit fuse(const Circuit &circuit);

/// Matrix of `gate` (controls included) on the ordered qubit list `support`,
/// which must contain every target and control.
Eigen::MatrixXcd gate_operator_on(const GateSpec &gate, std::span<const int> support);

/// Quantum Fourier transform from H, CZPow(pi / 2^d) and SWAP gates.
Circuit qft_circuit(int n_qubits);

struct VariationalOptions {
    /// Build each RY-CZ-RY block on an even pair as one VariationalLayer gate.
    bool fused = false;
    /// Include the (n-1, 0) CZ closing the odd-pair entangling layer.
    bool wrap = true;
};

/// Layered RY/CZ ansatz: per layer RY on all qubits, CZ on (0,1),(2,3),...,
/// RY on all qubits, CZ on (1,2),(3,4),...,(n-1,0); then a final RY layer.
/// Needs n_qubits * (2 * layers + 1) parameters.
Circuit variational_circuit(int n_qubits, int layers, std::span<const double> params,
                            VariationalOptions options = {});

extern template StateVector<float> execute<float>(const Circuit &, StateVector<float>,
                                                  std::span<const AttachedCallback>);
extern template StateVector<double> execute<double>(const Circuit &, StateVector<double>,
                                                    std::span<const AttachedCallback>);

} // namespace qsv

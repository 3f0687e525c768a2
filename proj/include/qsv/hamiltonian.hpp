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

#include <Eigen/Dense>

#include <variant>
#include <vector>

namespace qsv {

/// Largest register for which full 2^n x 2^n matrices are built.
inline constexpr int kMaxDenseQubits = 12;

enum class HamiltonianForm { Dense, Trotter };

struct DenseHamiltonian {
    int n_qubits = 0;
    Eigen::MatrixXcd matrix;
};

/// A k-local Hermitian term, k <= 2. qubits[0] is the most significant index
/// of `matrix`.
struct TrotterTerm {
    std::vector<int> qubits;
    Eigen::MatrixXcd matrix;
};

struct TrotterHamiltonian {
    int n_qubits = 0;
    std::vector<TrotterTerm> terms;
};

/**
 * A Hamiltonian in either dense or term-list form.
 *
 * `x_field` marks -sum_i X_i as built by build_x, whose ground state |+>^n is
 * prepared directly rather than by diagonalization.
 */
class Hamiltonian {
  public:
    Hamiltonian(DenseHamiltonian dense, bool x_field = false);
    Hamiltonian(TrotterHamiltonian trotter, bool x_field = false);

    HamiltonianForm form() const;
    int n_qubits() const;
    bool is_x_field() const { return x_field_; }

    /// Throws FormError if the form does not match.
    const DenseHamiltonian &dense() const;
    const TrotterHamiltonian &trotter() const;

    /// Full matrix, expanding a term list if needed (n <= 12).
    Eigen::MatrixXcd to_matrix() const;
    /// Dense copy of this Hamiltonian (expanding terms if needed).
    Hamiltonian to_dense() const;

  private:
    std::variant<DenseHamiltonian, TrotterHamiltonian> repr_;
    bool x_field_ = false;
};

/// -sum_i X_i.
Hamiltonian build_x(int n_qubits, HamiltonianForm form);

/// -sum_i (Z_i Z_{i+1 mod n} + h X_i), periodic. In term form each bond
/// (i, i+1 mod n) carries -(Z Z + h X_i).
Hamiltonian build_tfim(int n_qubits, double h, HamiltonianForm form);

/// ca * a + cb * b. Term lists are merged; terms on the same ordered qubit
/// tuple are summed.
Hamiltonian combine(const Hamiltonian &a, double ca, const Hamiltonian &b, double cb);

/// <psi|H|psi>. Term form is evaluated term by term without a full matrix.
double expectation(const Hamiltonian &h, const StateVector<double> &state);

/// H|psi> for a dense Hamiltonian.
StateVector<double> apply_hamiltonian(const DenseHamiltonian &h, const StateVector<double> &psi);

struct Eigensystem {
    Eigen::VectorXd values;   ///< ascending
    Eigen::MatrixXcd vectors; ///< column i belongs to values[i]
};

Eigensystem eigensystem(const DenseHamiltonian &h);
Eigensystem eigensystem(const Hamiltonian &h);

/// Embeds a 2^k x 2^k operator on `qubits` into an n-qubit matrix.
Eigen::MatrixXcd embed_operator(int n_qubits, std::span<const int> qubits,
                                const Eigen::MatrixXcd &op);

/// Ground state of h: |+>^n for an x-field Hamiltonian, else the lowest
/// eigenvector of the (expanded) dense matrix.
StateVector<double> ground_state(const Hamiltonian &h);

namespace pauli {
Eigen::Matrix2cd I();
Eigen::Matrix2cd X();
Eigen::Matrix2cd Y();
Eigen::Matrix2cd Z();
/// a (x) b, a acting on the more significant index.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);
} // namespace pauli

} // namespace qsv

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
#include "qsv/hamiltonian.hpp"

#include "qsv/bits.hpp"
#include "qsv/error.hpp"
#include "qsv/parallel.hpp"

#include <cstdint>
#include <string>

namespace qsv {
namespace {

using cd = std::complex<double>;

void check_hermitian(const Eigen::MatrixXcd &m, const char *what) {
    if (m.rows() != m.cols()) {
        throw ShapeError(std::string(what) + ": matrix is not square");
    }
    const double err = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (!(err <= 1e-10)) {
        throw NumericError(std::string(what) + ": matrix is not Hermitian (error " +
                           std::to_string(err) + ")");
    }
}

void check_dense_cap(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
        throw CapacityError("dense Hamiltonians are limited to " +
                            std::to_string(kMaxDenseQubits) + " qubits, got " +
                            std::to_string(n_qubits));
    }
}

// <psi| T |psi> for a local term, without expanding T.
double term_expectation(const StateVector<double> &psi, const TrotterTerm &term) {
    using bits::Index;
    const int n = psi.n_qubits();
    const auto k = static_cast<int>(term.qubits.size());
    const int dim = 1 << k;
    std::vector<Index> offsets(dim);
    for (int j = 0; j < dim; ++j) {
        for (int b = 0; b < k; ++b) {
            if ((j >> (k - 1 - b)) & 1) {
                offsets[j] |= bits::qubit_mask(n, term.qubits[b]);
            }
        }
    }
    const std::vector<int> pos = bits::sorted_bit_positions(n, term.qubits);
    const auto groups = static_cast<std::int64_t>(Index{1} << (n - k));
    const cd *amp = psi.amplitudes().data();
    const Eigen::MatrixXcd &m = term.matrix;
    double total = 0.0;
#pragma omp parallel for reduction(+ : total) num_threads(num_threads()) if (groups >= 4096)
    for (std::int64_t g = 0; g < groups; ++g) {
        const Index base = bits::insert_zero_bits(static_cast<Index>(g), pos);
        cd acc = 0.0;
        for (int r = 0; r < dim; ++r) {
            cd row = 0.0;
            for (int c = 0; c < dim; ++c) {
                row += m(r, c) * amp[base + offsets[c]];
            }
            acc += std::conj(amp[base + offsets[r]]) * row;
        }
        total += acc.real();
    }
    return total;
}

} // namespace

namespace pauli {
Eigen::Matrix2cd I() { return Eigen::Matrix2cd::Identity(); }
Eigen::Matrix2cd X() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}
Eigen::Matrix2cd Y() {
    Eigen::Matrix2cd m;
    m << 0, cd(0, -1), cd(0, 1), 0;
    return m;
}
Eigen::Matrix2cd Z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}
Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}
} // namespace pauli

Hamiltonian::Hamiltonian(DenseHamiltonian dense, bool x_field)
    : repr_(std::move(dense)), x_field_(x_field) {
    const auto &d = std::get<DenseHamiltonian>(repr_);
    check_dense_cap(d.n_qubits);
    const Eigen::Index dim = Eigen::Index{1} << d.n_qubits;
    if (d.matrix.rows() != dim || d.matrix.cols() != dim) {
        throw ShapeError("dense Hamiltonian matrix must be 2^n x 2^n");
    }
    check_hermitian(d.matrix, "DenseHamiltonian");
}

Hamiltonian::Hamiltonian(TrotterHamiltonian trotter, bool x_field)
    : repr_(std::move(trotter)), x_field_(x_field) {
    const auto &t = std::get<TrotterHamiltonian>(repr_);
    if (t.n_qubits < 1 || t.n_qubits > kMaxQubits) {
        throw CapacityError("Trotter Hamiltonian qubit count out of range");
    }
    for (const auto &term : t.terms) {
        const auto k = static_cast<int>(term.qubits.size());
        if (k < 1) {
            throw ShapeError("Trotter term without qubits");
        }
        if (k > 2) {
            throw CapacityError("Trotter terms are limited to 2 qubits");
        }
        for (int q : term.qubits) {
            if (q < 0 || q >= t.n_qubits) {
                throw ShapeError("Trotter term qubit out of range");
            }
        }
        if (k == 2 && term.qubits[0] == term.qubits[1]) {
            throw ShapeError("Trotter term qubits must be distinct");
        }
        if (term.matrix.rows() != (1 << k)) {
            throw ShapeError("Trotter term matrix does not match its qubits");
        }
        check_hermitian(term.matrix, "TrotterTerm");
    }
}

HamiltonianForm Hamiltonian::form() const {
    return std::holds_alternative<DenseHamiltonian>(repr_) ? HamiltonianForm::Dense
                                                           : HamiltonianForm::Trotter;
}

int Hamiltonian::n_qubits() const {
    return std::visit([](const auto &r) { return r.n_qubits; }, repr_);
}

const DenseHamiltonian &Hamiltonian::dense() const {
    if (const auto *d = std::get_if<DenseHamiltonian>(&repr_)) {
        return *d;
    }
    throw FormError("operation requires a dense Hamiltonian");
}

const TrotterHamiltonian &Hamiltonian::trotter() const {
    if (const auto *t = std::get_if<TrotterHamiltonian>(&repr_)) {
        return *t;
    }
    throw FormError("operation requires a Trotter (term-list) Hamiltonian");
}

Eigen::MatrixXcd Hamiltonian::to_matrix() const {
    if (const auto *d = std::get_if<DenseHamiltonian>(&repr_)) {
        return d->matrix;
    }
    const auto &t = std::get<TrotterHamiltonian>(repr_);
    check_dense_cap(t.n_qubits);
    const Eigen::Index dim = Eigen::Index{1} << t.n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &term : t.terms) {
        m += embed_operator(t.n_qubits, term.qubits, term.matrix);
    }
    return m;
}

Hamiltonian Hamiltonian::to_dense() const {
    if (form() == HamiltonianForm::Dense) {
        return *this;
    }
    return Hamiltonian(DenseHamiltonian{n_qubits(), to_matrix()}, x_field_);
}

Eigen::MatrixXcd embed_operator(int n_qubits, std::span<const int> qubits,
                                const Eigen::MatrixXcd &op) {
    using bits::Index;
    check_dense_cap(n_qubits);
    const auto k = static_cast<int>(qubits.size());
    const Index dim = Index{1} << n_qubits;
    const int sub = 1 << k;
    Index target_mask = 0;
    std::vector<Index> offsets(sub);
    for (int j = 0; j < sub; ++j) {
        for (int b = 0; b < k; ++b) {
            if ((j >> (k - 1 - b)) & 1) {
                offsets[j] |= bits::qubit_mask(n_qubits, qubits[b]);
            }
        }
    }
    for (int q : qubits) {
        target_mask |= bits::qubit_mask(n_qubits, q);
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (Index row = 0; row < dim; ++row) {
        const Index rest = row & ~target_mask;
        const auto r = static_cast<Eigen::Index>(bits::extract_qubits(row, n_qubits, qubits));
        for (int c = 0; c < sub; ++c) {
            out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(rest | offsets[c])) =
                op(r, c);
        }
    }
    return out;
}

Hamiltonian build_x(int n_qubits, HamiltonianForm form) {
    if (form == HamiltonianForm::Trotter) {
        if (n_qubits < 2) {
            throw ShapeError("Trotter form requires at least 2 qubits");
        }
        TrotterHamiltonian t{n_qubits, {}};
        for (int i = 0; i < n_qubits; ++i) {
            t.terms.push_back({{i}, -Eigen::MatrixXcd(pauli::X())});
        }
        return Hamiltonian(std::move(t), true);
    }
    check_dense_cap(n_qubits);
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < n_qubits; ++i) {
        const std::array<int, 1> q{i};
        m -= embed_operator(n_qubits, q, pauli::X());
    }
    return Hamiltonian(DenseHamiltonian{n_qubits, std::move(m)}, true);
}

Hamiltonian build_tfim(int n_qubits, double h, HamiltonianForm form) {
    if (n_qubits < 2) {
        throw ShapeError("TFIM requires at least 2 qubits");
    }
    const Eigen::MatrixXcd zz = pauli::kron(pauli::Z(), pauli::Z());
    const Eigen::MatrixXcd xi = pauli::kron(pauli::X(), pauli::I());
    const Eigen::MatrixXcd bond = -(zz + h * xi);
    if (form == HamiltonianForm::Trotter) {
        TrotterHamiltonian t{n_qubits, {}};
        for (int i = 0; i < n_qubits; ++i) {
            t.terms.push_back({{i, (i + 1) % n_qubits}, bond});
        }
        return Hamiltonian(std::move(t));
    }
    check_dense_cap(n_qubits);
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < n_qubits; ++i) {
        const std::array<int, 2> q{i, (i + 1) % n_qubits};
        m += embed_operator(n_qubits, q, bond);
    }
    return Hamiltonian(DenseHamiltonian{n_qubits, std::move(m)});
}

Hamiltonian combine(const Hamiltonian &a, double ca, const Hamiltonian &b, double cb) {
    if (a.form() != b.form()) {
        throw FormError("cannot combine dense and Trotter Hamiltonians");
    }
    if (a.n_qubits() != b.n_qubits()) {
        throw ShapeError("cannot combine Hamiltonians on different qubit counts");
    }
    if (a.form() == HamiltonianForm::Dense) {
        return Hamiltonian(
            DenseHamiltonian{a.n_qubits(), ca * a.dense().matrix + cb * b.dense().matrix});
    }
    TrotterHamiltonian out{a.n_qubits(), {}};
    for (const auto &term : a.trotter().terms) {
        out.terms.push_back({term.qubits, ca * term.matrix});
    }
    const std::size_t from_a = out.terms.size();
    for (const auto &term : b.trotter().terms) {
        bool merged = false;
        for (std::size_t i = 0; i < from_a; ++i) {
            if (out.terms[i].qubits == term.qubits) {
                out.terms[i].matrix += cb * term.matrix;
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.terms.push_back({term.qubits, cb * term.matrix});
        }
    }
    return Hamiltonian(std::move(out));
}

double expectation(const Hamiltonian &h, const StateVector<double> &state) {
    if (h.n_qubits() != state.n_qubits()) {
        throw ShapeError("Hamiltonian and state qubit counts differ");
    }
    if (h.form() == HamiltonianForm::Dense) {
        return state.vector().dot(h.dense().matrix * state.vector()).real();
    }
    double total = 0.0;
    for (const auto &term : h.trotter().terms) {
        total += term_expectation(state, term);
    }
    return total;
}

StateVector<double> apply_hamiltonian(const DenseHamiltonian &h, const StateVector<double> &psi) {
    if (h.n_qubits != psi.n_qubits()) {
        throw ShapeError("Hamiltonian and state qubit counts differ");
    }
    return StateVector<double>::adopt(h.matrix * psi.vector());
}

Eigensystem eigensystem(const DenseHamiltonian &h) {
    check_dense_cap(h.n_qubits);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix);
    if (solver.info() != Eigen::Success) {
        throw NumericError("Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigensystem eigensystem(const Hamiltonian &h) {
    if (h.form() == HamiltonianForm::Dense) {
        return eigensystem(h.dense());
    }
    return eigensystem(DenseHamiltonian{h.n_qubits(), h.to_matrix()});
}

StateVector<double> ground_state(const Hamiltonian &h) {
    if (h.is_x_field()) {
        return plus_state<double>(h.n_qubits());
    }
    const Eigensystem es = eigensystem(h);
    return StateVector<double>::adopt(es.vectors.col(0));
}

} // namespace qsv

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
#include "qsv/callbacks.hpp"

#include "qsv/bits.hpp"
#include "qsv/error.hpp"

#include <algorithm>
#include <cmath>

namespace qsv {

Callback Callback::energy(Hamiltonian h) {
    Callback cb(CallbackKind::Energy);
    cb.hamiltonian_ = std::move(h);
    return cb;
}

Callback Callback::overlap(StateVector<double> target) {
    Callback cb(CallbackKind::Overlap);
    cb.target_ = std::move(target);
    return cb;
}

Callback Callback::gap(std::optional<Hamiltonian> h) {
    Callback cb(CallbackKind::Gap);
    cb.hamiltonian_ = std::move(h);
    return cb;
}

Callback Callback::entanglement_entropy(std::vector<int> partition) {
    Callback cb(CallbackKind::EntanglementEntropy);
    cb.partition_ = std::move(partition);
    return cb;
}

double Callback::evaluate(const StateVector<double> &state, const Hamiltonian *current) const {
    switch (kind_) {
    case CallbackKind::Energy:
        return expectation(*hamiltonian_, state);
    case CallbackKind::Overlap:
        return std::abs(qsv::overlap(*target_, state));
    case CallbackKind::Gap: {
        const Hamiltonian *h = current ? current : (hamiltonian_ ? &*hamiltonian_ : nullptr);
        if (h == nullptr) {
            throw LookupError("Gap callback has no Hamiltonian to evaluate");
        }
        const Eigensystem es = eigensystem(*h);
        if (es.values.size() < 2) {
            throw ShapeError("Gap requires at least two eigenvalues");
        }
        return es.values[1] - es.values[0];
    }
    case CallbackKind::EntanglementEntropy:
        return qsv::entanglement_entropy(state, partition_);
    }
    return 0.0;
}

void Callback::record(double time, const StateVector<double> &state, const Hamiltonian *current) {
    records_.push_back(evaluate(state, current));
    times_.push_back(time);
}

void Callback::clear() {
    records_.clear();
    times_.clear();
}

double entanglement_entropy(const StateVector<double> &state, std::span<const int> partition) {
    const int n = state.n_qubits();
    const auto na = static_cast<int>(partition.size());
    if (na < 1 || na > n - 1) {
        throw ShapeError("entropy partition must hold between 1 and n-1 qubits");
    }
    std::vector<bool> in_a(n, false);
    for (int q : partition) {
        if (q < 0 || q >= n || in_a[q]) {
            throw ShapeError("entropy partition qubits must be distinct and in range");
        }
        in_a[q] = true;
    }
    std::vector<int> complement;
    for (int q = 0; q < n; ++q) {
        if (!in_a[q]) {
            complement.push_back(q);
        }
    }
    const Eigen::Index rows = Eigen::Index{1} << na;
    const Eigen::Index cols = Eigen::Index{1} << (n - na);
    Eigen::MatrixXcd m(rows, cols);
    for (bits::Index b = 0; b < state.size(); ++b) {
        m(static_cast<Eigen::Index>(bits::extract_qubits(b, n, partition)),
          static_cast<Eigen::Index>(bits::extract_qubits(b, n, complement))) = state[b];
    }
    // Schmidt weights s_i^2 are the eigenvalues of the smaller reduced density matrix.
    const Eigen::MatrixXcd rho = rows <= cols ? Eigen::MatrixXcd(m * m.adjoint())
                                              : Eigen::MatrixXcd(m.adjoint() * m);
    const Eigen::VectorXd weights =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(rho, Eigen::EigenvaluesOnly).eigenvalues();
    double entropy = 0.0;
    for (double w : weights) {
        if (w > 1e-300) {
            entropy -= w * std::log2(w);
        }
    }
    return std::max(entropy, 0.0);
}

} // namespace qsv

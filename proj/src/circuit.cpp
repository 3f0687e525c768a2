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
#include "qsv/circuit.hpp"

#include "qsv/bits.hpp"
#include "qsv/error.hpp"
#include "qsv/hamiltonian.hpp"
#include "qsv/kernels.hpp"

#include <algorithm>
#include <numbers>
#include <set>

namespace qsv {

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw CapacityError("circuit qubit count must be in [1, " + std::to_string(kMaxQubits) +
                            "]");
    }
}

Circuit &Circuit::add(GateSpec gate) {
    validate(gate, n_qubits_);
    queue_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::add(std::initializer_list<GateSpec> gates) {
    for (const auto &g : gates) {
        add(g);
    }
    return *this;
}

void Circuit::add_register(std::string name, std::vector<int> qubits) {
    std::set<int> seen;
    for (int q : qubits) {
        if (q < 0 || q >= n_qubits_ || !seen.insert(q).second) {
            throw ShapeError("register '" + name + "' must hold distinct in-range qubits");
        }
    }
    registers_[std::move(name)] = std::move(qubits);
}

std::size_t Circuit::parameter_count() const {
    std::size_t count = 0;
    for (const auto &g : queue_) {
        count += g.params.size();
    }
    return count;
}

std::vector<double> Circuit::parameters() const {
    std::vector<double> out;
    for (const auto &g : queue_) {
        out.insert(out.end(), g.params.begin(), g.params.end());
    }
    return out;
}

void Circuit::set_parameters(std::span<const double> params) {
    if (params.size() != parameter_count()) {
        throw ArityError("circuit has " + std::to_string(parameter_count()) +
                         " parameters, got " + std::to_string(params.size()));
    }
    std::size_t offset = 0;
    for (auto &g : queue_) {
        const std::size_t k = g.params.size();
        if (k > 0) {
            set_gate_parameters(g, params.subspan(offset, k));
            offset += k;
        }
    }
}

Circuit Circuit::inverse() const {
    Circuit out(n_qubits_);
    for (auto it = queue_.rbegin(); it != queue_.rend(); ++it) {
        out.queue_.push_back(adjoint(*it));
    }
    out.registers_ = registers_;
    return out;
}

template <typename Real>
StateVector<Real> execute(const Circuit &circuit, StateVector<Real> initial,
                          std::span<const AttachedCallback> callbacks) {
    if (initial.n_qubits() != circuit.n_qubits()) {
        throw ShapeError("initial state has " + std::to_string(initial.n_qubits()) +
                         " qubits, circuit has " + std::to_string(circuit.n_qubits()));
    }
    for (const auto &cb : callbacks) {
        if (cb.callback == nullptr || cb.after_gate >= circuit.size()) {
            throw ShapeError("callback attached to a position outside the circuit");
        }
    }
    for (std::size_t i = 0; i < circuit.size(); ++i) {
        apply_gate(initial, circuit[i]);
        for (const auto &cb : callbacks) {
            if (cb.after_gate == i) {
                if constexpr (std::is_same_v<Real, double>) {
                    cb.callback->record(static_cast<double>(i), initial);
                } else {
                    cb.callback->record(static_cast<double>(i), initial.template cast<double>());
                }
            }
        }
    }
    return initial;
}

template StateVector<float> execute<float>(const Circuit &, StateVector<float>,
                                           std::span<const AttachedCallback>);
template StateVector<double> execute<double>(const Circuit &, StateVector<double>,
                                             std::span<const AttachedCallback>);

Eigen::MatrixXcd gate_operator_on(const GateSpec &gate, std::span<const int> support) {
    const auto s = static_cast<int>(support.size());
    auto slot = [&](int q) {
        const auto it = std::find(support.begin(), support.end(), q);
        if (it == support.end()) {
            throw ShapeError("gate qubit missing from support");
        }
        return static_cast<int>(it - support.begin());
    };
    std::vector<int> target_slots;
    for (int t : gate.targets) {
        target_slots.push_back(slot(t));
    }
    bits::Index control_mask = 0;
    for (int c : gate.controls) {
        control_mask |= bits::qubit_mask(s, slot(c));
    }
    bits::Index target_mask = 0;
    for (int t : target_slots) {
        target_mask |= bits::qubit_mask(s, t);
    }
    const Eigen::MatrixXcd g = gate_matrix(gate);
    const Eigen::Index dim = Eigen::Index{1} << s;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (bits::Index r = 0; r < static_cast<bits::Index>(dim); ++r) {
        if ((r & control_mask) != control_mask) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = 1.0;
            continue;
        }
        for (bits::Index c = 0; c < static_cast<bits::Index>(dim); ++c) {
            if ((r & ~target_mask) != (c & ~target_mask)) {
                continue;
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                g(static_cast<Eigen::Index>(bits::extract_qubits(r, s, target_slots)),
                  static_cast<Eigen::Index>(bits::extract_qubits(c, s, target_slots)));
        }
    }
    return out;
}

namespace {

struct OpenBlock {
    std::vector<int> support; // ascending
    Eigen::MatrixXcd matrix;
    std::vector<std::size_t> origin;
};

// Expresses `block` on the ascending qubit list `support` (a superset).
Eigen::MatrixXcd widen(const OpenBlock &block, const std::vector<int> &support) {
    if (block.support == support) {
        return block.matrix;
    }
    std::vector<int> slots;
    for (int q : block.support) {
        slots.push_back(
            static_cast<int>(std::find(support.begin(), support.end(), q) - support.begin()));
    }
    return embed_operator(static_cast<int>(support.size()), slots, block.matrix);
}

bool touches(const OpenBlock &block, const std::vector<int> &qubits) {
    return std::any_of(qubits.begin(), qubits.end(), [&](int q) {
        return std::find(block.support.begin(), block.support.end(), q) != block.support.end();
    });
}

} // namespace

std::vector<std::variant<FusedGate, std::size_t>> fuse_blocks(const Circuit &circuit) {
    std::vector<std::variant<FusedGate, std::size_t>> out;
    std::vector<OpenBlock> open; // pairwise disjoint supports

    auto flush = [&](OpenBlock &&b) {
        std::sort(b.origin.begin(), b.origin.end());
        out.emplace_back(FusedGate{std::move(b.support), std::move(b.matrix), std::move(b.origin)});
    };

    for (std::size_t pos = 0; pos < circuit.size(); ++pos) {
        const GateSpec &gate = circuit[pos];
        std::vector<int> support = gate.support();
        std::sort(support.begin(), support.end());

        std::vector<OpenBlock> touching;
        std::vector<OpenBlock> rest;
        for (auto &b : open) {
            (touches(b, support) ? touching : rest).push_back(std::move(b));
        }
        open = std::move(rest);

        std::vector<int> merged = support;
        for (const auto &b : touching) {
            merged.insert(merged.end(), b.support.begin(), b.support.end());
        }
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

        if (support.size() > 2) {
            for (auto &b : touching) {
                flush(std::move(b));
            }
            out.emplace_back(pos);
            continue;
        }
        if (merged.size() > 2) {
            for (auto &b : touching) {
                flush(std::move(b));
            }
            merged = support;
            touching.clear();
        }
        OpenBlock block{merged, Eigen::MatrixXcd::Identity(Eigen::Index{1} << merged.size(),
                                                           Eigen::Index{1} << merged.size()),
                        {}};
        for (auto &b : touching) {
            block.matrix = widen(b, merged) * block.matrix;
            block.origin.insert(block.origin.end(), b.origin.begin(), b.origin.end());
        }
        block.matrix = gate_operator_on(gate, merged) * block.matrix;
        block.origin.push_back(pos);
        open.push_back(std::move(block));
    }
    for (auto &b : open) {
        flush(std::move(b));
    }
    return out;
}

Circuit fuse(const Circuit &circuit) {
    Circuit out(circuit.n_qubits());
    for (auto &item : fuse_blocks(circuit)) {
        if (auto *fused = std::get_if<FusedGate>(&item)) {
            out.add(gates::Unitary(std::move(fused->support), std::move(fused->matrix)));
        } else {
            out.add(circuit[std::get<std::size_t>(item)]);
        }
    }
    for (const auto &[name, qubits] : circuit.registers()) {
        out.add_register(name, qubits);
    }
    return out;
}

Circuit qft_circuit(int n_qubits) {
    Circuit c(n_qubits);
    for (int q = 0; q < n_qubits; ++q) {
        c.add(gates::H(q));
        for (int k = q + 1; k < n_qubits; ++k) {
            c.add(gates::CZPow(k, q, std::numbers::pi / static_cast<double>(1ULL << (k - q))));
        }
    }
    for (int q = 0; q < n_qubits / 2; ++q) {
        c.add(gates::SWAP(q, n_qubits - 1 - q));
    }
    return c;
}

Circuit variational_circuit(int n_qubits, int layers, std::span<const double> params,
                            VariationalOptions options) {
    if (n_qubits < 2 || n_qubits % 2 != 0) {
        throw ShapeError("variational circuit needs an even number of qubits >= 2");
    }
    if (layers < 0) {
        throw ShapeError("layer count must be non-negative");
    }
    const auto expected = static_cast<std::size_t>(n_qubits) * (2 * layers + 1);
    if (params.size() != expected) {
        throw ArityError("variational circuit expects " + std::to_string(expected) +
                         " parameters, got " + std::to_string(params.size()));
    }
    Circuit c(n_qubits);
    std::size_t p = 0;
    const auto n = static_cast<std::size_t>(n_qubits);
    for (int layer = 0; layer < layers; ++layer) {
        if (options.fused) {
            const auto first = params.subspan(p, n);
            const auto second = params.subspan(p + n, n);
            for (int q = 0; q < n_qubits; q += 2) {
                const std::array<double, 4> pair{first[q], first[q + 1], second[q], second[q + 1]};
                c.add(gates::VariationalLayer(q, q + 1, pair));
            }
            p += 2 * n;
        } else {
            for (int q = 0; q < n_qubits; ++q) {
                c.add(gates::RY(q, params[p++]));
            }
            for (int q = 0; q < n_qubits; q += 2) {
                c.add(gates::CZ(q, q + 1));
            }
            for (int q = 0; q < n_qubits; ++q) {
                c.add(gates::RY(q, params[p++]));
            }
        }
        for (int q = 1; q + 1 < n_qubits; q += 2) {
            c.add(gates::CZ(q, q + 1));
        }
        if (options.wrap && n_qubits > 2) {
            c.add(gates::CZ(n_qubits - 1, 0));
        }
    }
    for (int q = 0; q < n_qubits; ++q) {
        c.add(gates::RY(q, params[p++]));
    }
    return c;
}

} // namespace qsv

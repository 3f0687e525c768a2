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
#include "qsv/kernels.hpp"

#include "qsv/bits.hpp"
#include "qsv/parallel.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace qsv {
namespace {

using bits::Index;

// Below this many index groups the OpenMP fork costs more than it saves.
constexpr Index kParallelGroups = Index{1} << 12;

// Plain product without the NaN/Inf recovery of operator* for std::complex.
template <typename Real>
inline std::complex<Real> mul(std::complex<Real> a, std::complex<Real> b) {
    return {a.real() * b.real() - a.imag() * b.imag(),
            a.real() * b.imag() + a.imag() * b.real()};
}

template <typename Real, int NT> struct Layout {
    static constexpr int kDim = 1 << NT;
    std::array<Index, kDim> offsets{};
    std::vector<int> insert_positions;
    Index control_mask = 0;
    Index groups = 0;
};

template <typename Real, int NT>
Layout<Real, NT> make_layout(int n_qubits, std::span<const int> targets,
                             std::span<const int> controls) {
    Layout<Real, NT> layout;
    for (int j = 0; j < Layout<Real, NT>::kDim; ++j) {
        Index off = 0;
        for (int k = 0; k < NT; ++k) {
            if ((j >> (NT - 1 - k)) & 1) {
                off |= bits::qubit_mask(n_qubits, targets[k]);
            }
        }
        layout.offsets[j] = off;
    }
    std::vector<int> all(targets.begin(), targets.end());
    all.insert(all.end(), controls.begin(), controls.end());
    layout.insert_positions = bits::sorted_bit_positions(n_qubits, all);
    for (int c : controls) {
        layout.control_mask |= bits::qubit_mask(n_qubits, c);
    }
    layout.groups = Index{1} << (n_qubits - static_cast<int>(all.size()));
    return layout;
}

template <typename Real, int NT, typename Body>
void for_each_group(const Layout<Real, NT> &layout, int threads, Body &&body) {
    const auto groups = static_cast<std::int64_t>(layout.groups);
    const std::span<const int> pos(layout.insert_positions);
    const Index cmask = layout.control_mask;
    const bool parallel = threads > 1 && layout.groups >= kParallelGroups;
#pragma omp parallel for schedule(static) num_threads(threads) if (parallel)
    for (std::int64_t g = 0; g < groups; ++g) {
        body(bits::insert_zero_bits(static_cast<Index>(g), pos) | cmask);
    }
}

template <typename Real, int NT>
void apply_fixed(std::complex<Real> *amp, int n_qubits, std::span<const int> targets,
                 std::span<const int> controls, const Eigen::MatrixXcd &matrix,
                 KernelClass path, int threads) {
    using C = std::complex<Real>;
    constexpr int kDim = 1 << NT;
    const auto layout = make_layout<Real, NT>(n_qubits, targets, controls);
    const auto &off = layout.offsets;

    std::array<std::array<C, kDim>, kDim> m{};
    for (int r = 0; r < kDim; ++r) {
        for (int c = 0; c < kDim; ++c) {
            m[r][c] = C(static_cast<Real>(matrix(r, c).real()),
                        static_cast<Real>(matrix(r, c).imag()));
        }
    }

    switch (path) {
    case KernelClass::Diagonal: {
        // Only entries that differ from 1 are touched, e.g. Z updates half
        // of the amplitudes.
        std::array<bool, kDim> active{};
        for (int r = 0; r < kDim; ++r) {
            active[r] = m[r][r] != C(1);
        }
        for_each_group(layout, threads, [&](Index base) {
            for (int r = 0; r < kDim; ++r) {
                if (active[r]) {
                    amp[base + off[r]] = mul(m[r][r], amp[base + off[r]]);
                }
            }
        });
        return;
    }
    case KernelClass::Permutation: {
        std::array<int, kDim> source{};
        std::array<bool, kDim> unit{};
        for (int r = 0; r < kDim; ++r) {
            for (int c = 0; c < kDim; ++c) {
                if (m[r][c] != C(0)) {
                    source[r] = c;
                }
            }
            unit[r] = m[r][source[r]] == C(1);
        }
        for_each_group(layout, threads, [&](Index base) {
            std::array<C, kDim> in;
            for (int c = 0; c < kDim; ++c) {
                in[c] = amp[base + off[c]];
            }
            for (int r = 0; r < kDim; ++r) {
                amp[base + off[r]] = unit[r] ? in[source[r]] : mul(m[r][source[r]], in[source[r]]);
            }
        });
        return;
    }
    case KernelClass::General:
        for_each_group(layout, threads, [&](Index base) {
            std::array<C, kDim> in;
            for (int c = 0; c < kDim; ++c) {
                in[c] = amp[base + off[c]];
            }
            for (int r = 0; r < kDim; ++r) {
                C acc(0);
                for (int c = 0; c < kDim; ++c) {
                    acc += mul(m[r][c], in[c]);
                }
                amp[base + off[r]] = acc;
            }
        });
        return;
    }
}

void check_indices(int n_qubits, std::span<const int> targets, std::span<const int> controls) {
    for (auto list : {targets, controls}) {
        for (int q : list) {
            if (q < 0 || q >= n_qubits) {
                throw ShapeError("qubit " + std::to_string(q) + " out of range for " +
                                 std::to_string(n_qubits) + " qubits");
            }
        }
    }
}

} // namespace

namespace detail {

template <typename Real>
void apply_matrix(std::span<std::complex<Real>> amplitudes, int n_qubits,
                  std::span<const int> targets, std::span<const int> controls,
                  const Eigen::MatrixXcd &matrix, KernelClass path, int threads) {
    check_indices(n_qubits, targets, controls);
    if (amplitudes.size() != (std::size_t{1} << n_qubits)) {
        throw ShapeError("amplitude span does not hold 2^n entries");
    }
    const Eigen::Index dim = Eigen::Index{1} << targets.size();
    if (matrix.rows() != dim || matrix.cols() != dim) {
        throw ShapeError("gate matrix dimension does not match target count");
    }
    if (path != KernelClass::General) {
        const KernelClass actual = kernel_class(matrix);
        if (actual != path) {
            throw ShapeError("gate matrix does not support the requested kernel path");
        }
    }
    switch (targets.size()) {
    case 1:
        apply_fixed<Real, 1>(amplitudes.data(), n_qubits, targets, controls, matrix, path,
                             threads);
        return;
    case 2:
        apply_fixed<Real, 2>(amplitudes.data(), n_qubits, targets, controls, matrix, path,
                             threads);
        return;
    default:
        throw ShapeError("kernels support 1 or 2 target qubits");
    }
}

template <typename Real>
void swap_qubit_slots(std::span<std::complex<Real>> amplitudes, int n_qubits, int a, int b,
                      int threads) {
    if (a == b) {
        return;
    }
    const std::array<int, 2> targets{a, b};
    apply_matrix<Real>(amplitudes, n_qubits, targets, {}, gate_matrix(gates::SWAP(a, b)),
                       KernelClass::Permutation, threads);
}

template void apply_matrix<float>(std::span<std::complex<float>>, int, std::span<const int>,
                                  std::span<const int>, const Eigen::MatrixXcd &, KernelClass,
                                  int);
template void apply_matrix<double>(std::span<std::complex<double>>, int, std::span<const int>,
                                   std::span<const int>, const Eigen::MatrixXcd &, KernelClass,
                                   int);
template void swap_qubit_slots<float>(std::span<std::complex<float>>, int, int, int, int);
template void swap_qubit_slots<double>(std::span<std::complex<double>>, int, int, int, int);

} // namespace detail

template <typename Real>
void apply_gate(StateVector<Real> &state, const GateSpec &spec, KernelClass path) {
    validate(spec, state.n_qubits());
    detail::apply_matrix<Real>(state.amplitudes(), state.n_qubits(), spec.targets,
                               spec.controls, gate_matrix(spec), path, num_threads());
}

template <typename Real> void apply_gate(StateVector<Real> &state, const GateSpec &spec) {
    validate(spec, state.n_qubits());
    const Eigen::MatrixXcd m = gate_matrix(spec);
    detail::apply_matrix<Real>(state.amplitudes(), state.n_qubits(), spec.targets,
                               spec.controls, m, kernel_class(m), num_threads());
}

template void apply_gate<float>(StateVector<float> &, const GateSpec &);
template void apply_gate<double>(StateVector<double> &, const GateSpec &);
template void apply_gate<float>(StateVector<float> &, const GateSpec &, KernelClass);
template void apply_gate<double>(StateVector<double> &, const GateSpec &, KernelClass);

} // namespace qsv

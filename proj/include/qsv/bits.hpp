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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

/// Bit helpers for the basis-index convention: in an n-qubit register,
/// qubit q lives at bit position (n - 1 - q), so qubit 0 is the MSB.
namespace qsv::bits {

using Index = std::uint64_t;

constexpr int bit_position(int n_qubits, int qubit) { return n_qubits - 1 - qubit; }

constexpr Index qubit_mask(int n_qubits, int qubit) {
    return Index{1} << bit_position(n_qubits, qubit);
}

constexpr bool qubit_value(Index index, int n_qubits, int qubit) {
    return (index >> bit_position(n_qubits, qubit)) & 1U;
}

/// Inserts a zero bit at each position of `sorted_positions` (ascending)
/// into `value`, pdep-style. Enumerating value over [0, 2^(n-k)) yields every
/// n-bit index whose bits at those positions are all zero, each exactly once.
inline Index insert_zero_bits(Index value, std::span<const int> sorted_positions) {
    for (int pos : sorted_positions) {
        const Index low = value & ((Index{1} << pos) - 1);
        value = ((value >> pos) << (pos + 1)) | low;
    }
    return value;
}

/// Extracts the listed qubits of an n-qubit index into a compact integer;
/// the first listed qubit becomes the most significant bit.
inline Index extract_qubits(Index index, int n_qubits, std::span<const int> qubits) {
    Index out = 0;
    for (int q : qubits) {
        out = (out << 1) | ((index >> bit_position(n_qubits, q)) & 1U);
    }
    return out;
}

inline std::vector<int> sorted_bit_positions(int n_qubits, std::span<const int> qubits) {
    std::vector<int> pos;
    pos.reserve(qubits.size());
    for (int q : qubits) {
        pos.push_back(bit_position(n_qubits, q));
    }
    std::sort(pos.begin(), pos.end());
    return pos;
}

} // namespace qsv::bits

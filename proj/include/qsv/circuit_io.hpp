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

#include "qsv/circuit.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace qsv {

/**
 * Circuit JSON:
 *
 *   {"nqubits": 3,
 *    "gates": [{"name": "H", "targets": [0]},
 *              {"name": "CZPow", "targets": [1, 0], "params": [0.785]},
 *              {"name": "X", "targets": [2], "controls": [0, 1]},
 *              {"name": "Unitary", "targets": [0], "matrix": [[[0,0],[1,0]],[[1,0],[0,0]]]}],
 *    "registers": {"a": [0, 1]}}
 *
 * Gate names are the GateKind names. "controls", "params", "matrix" and
 * "registers" are optional; matrix entries are [re, im] pairs.
 */
Circuit parse_circuit(std::string_view json_text);

/// Reads and parses a circuit file. Throws ParseError with line information
/// for malformed JSON and naming the offending entry for invalid gates.
Circuit parse_circuit_file(const std::filesystem::path &path);

std::string serialize_circuit(const Circuit &circuit);

} // namespace qsv

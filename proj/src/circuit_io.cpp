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
#include "qsv/circuit_io.hpp"

#include "qsv/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qsv {
namespace {

using nlohmann::json;

std::string location(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    const auto before = text.substr(0, byte);
    const auto line = 1 + std::count(before.begin(), before.end(), '\n');
    const auto last_nl = before.rfind('\n');
    const auto column = last_nl == std::string_view::npos ? byte : byte - last_nl - 1;
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::vector<int> int_list(const json &entry, const char *key) {
    if (!entry.contains(key)) {
        return {};
    }
    return entry.at(key).get<std::vector<int>>();
}

Eigen::MatrixXcd parse_matrix(const json &m) {
    const auto rows = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXcd out(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json &row = m.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != rows) {
            throw ParseError("matrix must be square");
        }
        for (Eigen::Index c = 0; c < rows; ++c) {
            const json &v = row.at(static_cast<std::size_t>(c));
            out(r, c) = v.is_array() ? std::complex<double>(v.at(0).get<double>(),
                                                            v.at(1).get<double>())
                                     : std::complex<double>(v.get<double>(), 0.0);
        }
    }
    return out;
}

} // namespace

Circuit parse_circuit(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw ParseError("malformed circuit JSON at " + location(text, e.byte) + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("nqubits") || !doc.contains("gates")) {
        throw ParseError("circuit JSON needs \"nqubits\" and \"gates\"");
    }
    std::optional<Circuit> circuit;
    try {
        circuit.emplace(doc.at("nqubits").get<int>());
    } catch (const json::exception &e) {
        throw ParseError(std::string("invalid \"nqubits\": ") + e.what());
    }
    const json &list = doc.at("gates");
    if (!list.is_array()) {
        throw ParseError("\"gates\" must be an array");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
        const json &entry = list[i];
        const std::string where = "gates[" + std::to_string(i) + "]";
        try {
            const auto name = entry.at("name").get<std::string>();
            const auto kind = gate_kind_from_name(name);
            if (!kind) {
                throw ParseError(where + ": unknown gate " + name);
            }
            GateSpec g;
            g.kind = *kind;
            g.targets = int_list(entry, "targets");
            g.controls = int_list(entry, "controls");
            if (entry.contains("params")) {
                g.params = entry.at("params").get<std::vector<double>>();
            }
            if (entry.contains("matrix")) {
                g.matrix = parse_matrix(entry.at("matrix"));
            }
            if (g.kind == GateKind::VariationalLayer && g.params.size() == 4) {
                GateSpec fresh = gates::VariationalLayer(g.targets.at(0), g.targets.at(1), g.params);
                fresh.controls = g.controls;
                g = std::move(fresh);
            }
            circuit->add(std::move(g));
        } catch (const ParseError &) {
            throw;
        } catch (const json::exception &e) {
            throw ParseError(where + ": " + e.what());
        } catch (const Error &e) {
            throw ParseError(where + ": " + e.what());
        } catch (const std::out_of_range &e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (doc.contains("registers")) {
        try {
            for (const auto &[name, qubits] : doc.at("registers").items()) {
                circuit->add_register(name, qubits.get<std::vector<int>>());
            }
        } catch (const json::exception &e) {
            throw ParseError(std::string("invalid \"registers\": ") + e.what());
        } catch (const Error &e) {
            throw ParseError(std::string("invalid \"registers\": ") + e.what());
        }
    }
    return std::move(*circuit);
}

Circuit parse_circuit_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open circuit file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_circuit(buffer.str());
}

std::string serialize_circuit(const Circuit &circuit) {
    json doc;
    doc["nqubits"] = circuit.n_qubits();
    json list = json::array();
    for (const auto &g : circuit.queue()) {
        json entry;
        entry["name"] = std::string(gate_name(g.kind));
        entry["targets"] = g.targets;
        if (!g.controls.empty()) {
            entry["controls"] = g.controls;
        }
        if (!g.params.empty()) {
            entry["params"] = g.params;
        }
        if (g.kind == GateKind::Unitary && g.matrix) {
            json m = json::array();
            for (Eigen::Index r = 0; r < g.matrix->rows(); ++r) {
                json row = json::array();
                for (Eigen::Index c = 0; c < g.matrix->cols(); ++c) {
                    const auto v = (*g.matrix)(r, c);
                    row.push_back({v.real(), v.imag()});
                }
                m.push_back(std::move(row));
            }
            entry["matrix"] = std::move(m);
        }
        list.push_back(std::move(entry));
    }
    doc["gates"] = std::move(list);
    if (!circuit.registers().empty()) {
        json regs = json::object();
        for (const auto &[name, qubits] : circuit.registers()) {
            regs[name] = qubits;
        }
        doc["registers"] = std::move(regs);
    }
    return doc.dump();
}

} // namespace qsv

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
#include "qsv/gate.hpp"

#include "qsv/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace qsv {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

struct KindInfo {
    GateKind kind;
    std::string_view name;
    int targets;
    std::size_t params;
};

// Indexed by GateKind.
constexpr std::array<KindInfo, 13> kKinds{{
    {GateKind::H, "H", 1, 0},
    {GateKind::X, "X", 1, 0},
    {GateKind::Y, "Y", 1, 0},
    {GateKind::Z, "Z", 1, 0},
    {GateKind::RX, "RX", 1, 1},
    {GateKind::RY, "RY", 1, 1},
    {GateKind::RZ, "RZ", 1, 1},
    {GateKind::CZPow, "CZPow", 2, 1},
    {GateKind::CNOT, "CNOT", 2, 0},
    {GateKind::CZ, "CZ", 2, 0},
    {GateKind::SWAP, "SWAP", 2, 0},
    {GateKind::Unitary, "Unitary", 0, 0},
    {GateKind::VariationalLayer, "VariationalLayer", 2, 4},
}};

const KindInfo &info(GateKind kind) { return kKinds[static_cast<std::size_t>(kind)]; }

Eigen::Matrix2cd ry_matrix(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    Eigen::Matrix2cd m;
    m << c, -s, s, c;
    return m;
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    Eigen::Matrix4cd m;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return m;
}

Eigen::Matrix4cd diag4(cd d0, cd d1, cd d2, cd d3) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    m(3, 3) = d3;
    return m;
}

Eigen::MatrixXcd variational_layer_matrix(std::span<const double> p) {
    const Eigen::Matrix4cd first = kron2(ry_matrix(p[0]), ry_matrix(p[1]));
    const Eigen::Matrix4cd second = kron2(ry_matrix(p[2]), ry_matrix(p[3]));
    return second * diag4(1, 1, 1, -1) * first;
}

GateSpec make(GateKind kind, std::vector<int> targets, std::vector<double> params = {}) {
    GateSpec g;
    g.kind = kind;
    g.targets = std::move(targets);
    g.params = std::move(params);
    return g;
}

std::string label(const GateSpec &spec) {
    std::string s(gate_name(spec.kind));
    s += "(";
    for (std::size_t i = 0; i < spec.targets.size(); ++i) {
        s += (i ? "," : "") + std::to_string(spec.targets[i]);
    }
    return s + ")";
}

} // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    for (const auto &k : kKinds) {
        if (k.name == name) {
            return k.kind;
        }
    }
    return std::nullopt;
}

std::size_t parameter_count(GateKind kind) { return info(kind).params; }
int target_count(GateKind kind) { return info(kind).targets; }

std::vector<int> GateSpec::support() const {
    std::vector<int> s = targets;
    s.insert(s.end(), controls.begin(), controls.end());
    return s;
}

bool operator==(const GateSpec &a, const GateSpec &b) {
    if (a.kind != b.kind || a.targets != b.targets || a.controls != b.controls ||
        a.params != b.params || a.matrix.has_value() != b.matrix.has_value()) {
        return false;
    }
    return !a.matrix || (a.matrix->rows() == b.matrix->rows() &&
                         a.matrix->cols() == b.matrix->cols() && *a.matrix == *b.matrix);
}

void validate(const GateSpec &spec, int n_qubits) {
    const int expected = target_count(spec.kind);
    const auto nt = static_cast<int>(spec.targets.size());
    if ((expected == 0 && (nt < 1 || nt > 2)) || (expected != 0 && nt != expected)) {
        throw ShapeError(label(spec) + ": wrong number of targets");
    }
    if (spec.params.size() != parameter_count(spec.kind)) {
        throw ArityError(label(spec) + ": expected " +
                         std::to_string(parameter_count(spec.kind)) + " parameters, got " +
                         std::to_string(spec.params.size()));
    }
    std::vector<int> all = spec.support();
    for (int q : all) {
        if (q < 0 || q >= n_qubits) {
            throw ShapeError(label(spec) + ": qubit " + std::to_string(q) +
                             " out of range for " + std::to_string(n_qubits) + " qubits");
        }
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw ShapeError(label(spec) + ": targets and controls must be distinct");
    }
    if (spec.kind == GateKind::Unitary) {
        if (!spec.matrix) {
            throw MissingMatrixError(label(spec) + ": Unitary gate requires a matrix");
        }
        const Eigen::Index dim = Eigen::Index{1} << nt;
        const auto &m = *spec.matrix;
        if (m.rows() != dim || m.cols() != dim) {
            throw ShapeError(label(spec) + ": matrix dimension does not match targets");
        }
        const double err =
            (m.adjoint() * m - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
        if (!(err <= 1e-8)) {
            throw NumericError(label(spec) + ": matrix is not unitary (error " +
                               std::to_string(err) + ")");
        }
    }
}

Eigen::MatrixXcd gate_matrix(const GateSpec &spec) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd m;
    switch (spec.kind) {
    case GateKind::H:
        m << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
        return m;
    case GateKind::X:
        m << 0, 1, 1, 0;
        return m;
    case GateKind::Y:
        m << 0, -kI, kI, 0;
        return m;
    case GateKind::Z:
        m << 1, 0, 0, -1;
        return m;
    case GateKind::RX: {
        const double c = std::cos(spec.params.at(0) / 2);
        const double s = std::sin(spec.params.at(0) / 2);
        m << c, -kI * s, -kI * s, c;
        return m;
    }
    case GateKind::RY:
        return ry_matrix(spec.params.at(0));
    case GateKind::RZ: {
        const double h = spec.params.at(0) / 2;
        m << std::polar(1.0, -h), 0, 0, std::polar(1.0, h);
        return m;
    }
    case GateKind::CZPow:
        return diag4(1, 1, 1, std::polar(1.0, spec.params.at(0)));
    case GateKind::CZ:
        return diag4(1, 1, 1, -1);
    case GateKind::CNOT: {
        Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
        c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1;
        return c;
    }
    case GateKind::SWAP: {
        Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
        s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1;
        return s;
    }
    case GateKind::Unitary:
        if (!spec.matrix) {
            throw MissingMatrixError("Unitary gate requires a matrix");
        }
        return *spec.matrix;
    case GateKind::VariationalLayer:
        if (spec.matrix) {
            return *spec.matrix;
        }
        if (spec.params.size() != 4) {
            throw ArityError("VariationalLayer expects 4 parameters");
        }
        return variational_layer_matrix(spec.params);
    }
    throw Error("unhandled gate kind");
}

KernelClass kernel_class(const Eigen::MatrixXcd &matrix) {
    const Eigen::Index dim = matrix.rows();
    bool diagonal = true;
    bool permutation = true;
    for (Eigen::Index r = 0; r < dim; ++r) {
        int nonzero = 0;
        for (Eigen::Index c = 0; c < dim; ++c) {
            const cd v = matrix(r, c);
            if (v == cd{0.0, 0.0}) {
                continue;
            }
            ++nonzero;
            if (r != c) {
                diagonal = false;
            }
            if (std::abs(std::abs(v) - 1.0) > 1e-12) {
                permutation = false;
            }
        }
        if (nonzero != 1) {
            permutation = false;
        }
    }
    if (diagonal) {
        return KernelClass::Diagonal;
    }
    // a unitary with exactly one unit-modulus entry per row has one per column
    return permutation ? KernelClass::Permutation : KernelClass::General;
}

KernelClass kernel_class(const GateSpec &spec) { return kernel_class(gate_matrix(spec)); }

void set_gate_parameters(GateSpec &spec, std::span<const double> params) {
    if (params.size() != spec.params.size()) {
        throw ArityError(label(spec) + ": expected " + std::to_string(spec.params.size()) +
                         " parameters, got " + std::to_string(params.size()));
    }
    spec.params.assign(params.begin(), params.end());
    if (spec.kind == GateKind::VariationalLayer) {
        spec.matrix = variational_layer_matrix(spec.params);
    }
}

GateSpec adjoint(const GateSpec &spec) {
    GateSpec out = spec;
    switch (spec.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SWAP:
        return out;
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::CZPow:
        out.params[0] = -out.params[0];
        return out;
    case GateKind::Unitary:
    case GateKind::VariationalLayer:
        out.kind = GateKind::Unitary;
        out.params.clear();
        out.matrix = gate_matrix(spec).adjoint();
        return out;
    }
    return out;
}

namespace gates {

GateSpec H(int q) { return make(GateKind::H, {q}); }
GateSpec X(int q) { return make(GateKind::X, {q}); }
GateSpec Y(int q) { return make(GateKind::Y, {q}); }
GateSpec Z(int q) { return make(GateKind::Z, {q}); }
GateSpec RX(int q, double theta) { return make(GateKind::RX, {q}, {theta}); }
GateSpec RY(int q, double theta) { return make(GateKind::RY, {q}, {theta}); }
GateSpec RZ(int q, double theta) { return make(GateKind::RZ, {q}, {theta}); }
GateSpec CNOT(int control, int target) { return make(GateKind::CNOT, {control, target}); }
GateSpec CZ(int q0, int q1) { return make(GateKind::CZ, {q0, q1}); }
GateSpec CZPow(int q0, int q1, double theta) {
    return make(GateKind::CZPow, {q0, q1}, {theta});
}
GateSpec SWAP(int q0, int q1) { return make(GateKind::SWAP, {q0, q1}); }

GateSpec Unitary(std::vector<int> targets, Eigen::MatrixXcd matrix) {
    GateSpec g = make(GateKind::Unitary, std::move(targets));
    g.matrix = std::move(matrix);
    return g;
}

GateSpec VariationalLayer(int q0, int q1, std::span<const double> params) {
    if (params.size() != 4) {
        throw ArityError("VariationalLayer expects 4 parameters");
    }
    GateSpec g = make(GateKind::VariationalLayer, {q0, q1},
                      std::vector<double>(params.begin(), params.end()));
    g.matrix = variational_layer_matrix(params);
    return g;
}

GateSpec controlled(GateSpec gate, std::vector<int> controls) {
    gate.controls.insert(gate.controls.end(), controls.begin(), controls.end());
    return gate;
}

} // namespace gates

} // namespace qsv

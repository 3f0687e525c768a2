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
#include "oracle.hpp"

#include "qsv/kernels.hpp"
#include "qsv/parallel.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

namespace qsv {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

GateSpec sample_gate(GateKind kind, std::mt19937_64 &rng) {
    const auto a = oracle::random_angles(4, rng);
    switch (kind) {
    case GateKind::H: return gates::H(0);
    case GateKind::X: return gates::X(0);
    case GateKind::Y: return gates::Y(0);
    case GateKind::Z: return gates::Z(0);
    case GateKind::RX: return gates::RX(0, a[0]);
    case GateKind::RY: return gates::RY(0, a[0]);
    case GateKind::RZ: return gates::RZ(0, a[0]);
    case GateKind::CZPow: return gates::CZPow(0, 1, a[0]);
    case GateKind::CNOT: return gates::CNOT(0, 1);
    case GateKind::CZ: return gates::CZ(0, 1);
    case GateKind::SWAP: return gates::SWAP(0, 1);
    case GateKind::Unitary: return gates::Unitary({0, 1}, oracle::random_unitary(4, rng));
    case GateKind::VariationalLayer: return gates::VariationalLayer(0, 1, a);
    }
    return gates::H(0);
}

const GateKind kAllKinds[] = {GateKind::H,     GateKind::X,    GateKind::Y,      GateKind::Z,
                              GateKind::RX,    GateKind::RY,   GateKind::RZ,     GateKind::CZPow,
                              GateKind::CNOT,  GateKind::CZ,   GateKind::SWAP,   GateKind::Unitary,
                              GateKind::VariationalLayer};

TEST(GateMatrix, PauliZ) {
    EXPECT_EQ(gate_matrix(gates::Z(0)), (Eigen::MatrixXcd(2, 2) << 1, 0, 0, -1).finished());
}

TEST(GateMatrix, RYPi) {
    const Eigen::MatrixXcd expected = (Eigen::MatrixXcd(2, 2) << 0, -1, 1, 0).finished();
    EXPECT_LT((gate_matrix(gates::RY(0, kPi)) - expected).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(gate_matrix(gates::RY(0, 0.7)).imag(), Eigen::MatrixXd::Zero(2, 2));
}

TEST(GateMatrix, SwapExchangesMiddleIndices) {
    const auto m = gate_matrix(gates::SWAP(0, 1));
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected(0, 0) = expected(1, 2) = expected(2, 1) = expected(3, 3) = 1;
    EXPECT_EQ(m, expected);
}

TEST(GateMatrix, CZPowPhaseIsTheta) {
    const auto m = gate_matrix(gates::CZPow(0, 1, 0.3));
    EXPECT_NEAR(std::abs(m(3, 3) - std::exp(cd(0, 0.3))), 0.0, 1e-15);
    EXPECT_EQ(m(2, 2), cd(1.0));
}

TEST(GateMatrix, MatchesReferenceDefinitions) {
    std::mt19937_64 rng(11);
    for (auto kind : kAllKinds) {
        const auto g = sample_gate(kind, rng);
        EXPECT_LT((gate_matrix(g) - oracle::gate_definition(g)).cwiseAbs().maxCoeff(), 1e-14)
            << gate_name(kind);
    }
}

TEST(GateMatrix, UnitaryWithoutMatrix) {
    GateSpec g{GateKind::Unitary, {0}, {}, {}, std::nullopt};
    EXPECT_THROW(gate_matrix(g), MissingMatrixError);
    EXPECT_THROW(validate(g, 1), MissingMatrixError);
}

TEST(GateSpec, NamesRoundTrip) {
    for (auto kind : kAllKinds) {
        EXPECT_EQ(gate_kind_from_name(gate_name(kind)), kind);
    }
    EXPECT_FALSE(gate_kind_from_name("FOO").has_value());
}

TEST(GateSpec, Validation) {
    EXPECT_THROW(validate(gates::H(2), 2), ShapeError);
    EXPECT_THROW(validate(gates::H(-1), 2), ShapeError);
    EXPECT_THROW(validate(gates::CNOT(1, 1), 2), ShapeError);
    EXPECT_THROW(validate(gates::controlled(gates::X(0), {0}), 2), ShapeError);
    EXPECT_THROW(validate(GateSpec{GateKind::RX, {0}, {}, {}, std::nullopt}, 1), ArityError);
    EXPECT_THROW(validate(GateSpec{GateKind::H, {0, 1}, {}, {}, std::nullopt}, 2), ShapeError);
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    bad(0, 1) = 1e-6;
    EXPECT_THROW(validate(gates::Unitary({0}, bad), 1), NumericError);
    bad(0, 1) = 1e-10;
    EXPECT_NO_THROW(validate(gates::Unitary({0}, bad), 1));
    EXPECT_THROW(validate(gates::Unitary({0}, Eigen::MatrixXcd::Identity(4, 4)), 2), ShapeError);
}

TEST(KernelClass, Assignment) {
    EXPECT_EQ(kernel_class(gates::Z(0)), KernelClass::Diagonal);
    EXPECT_EQ(kernel_class(gates::CZ(0, 1)), KernelClass::Diagonal);
    EXPECT_EQ(kernel_class(gates::RZ(0, 0.4)), KernelClass::Diagonal);
    EXPECT_EQ(kernel_class(gates::CZPow(0, 1, 0.4)), KernelClass::Diagonal);
    EXPECT_EQ(kernel_class(gates::X(0)), KernelClass::Permutation);
    EXPECT_EQ(kernel_class(gates::CNOT(0, 1)), KernelClass::Permutation);
    EXPECT_EQ(kernel_class(gates::SWAP(0, 1)), KernelClass::Permutation);
    EXPECT_EQ(kernel_class(gates::Y(0)), KernelClass::Permutation);
    EXPECT_EQ(kernel_class(gates::H(0)), KernelClass::General);
    EXPECT_EQ(kernel_class(gates::RX(0, 0.4)), KernelClass::General);
    EXPECT_EQ(kernel_class(gates::RY(0, 0.4)), KernelClass::General);
}

TEST(ApplyGate, XFlipsQubit) {
    auto s = new_zero_state(1);
    apply_gate(s, gates::X(0));
    EXPECT_EQ(s[0], cd(0.0));
    EXPECT_EQ(s[1], cd(1.0));
}

TEST(ApplyGate, CnotOnTenGivesEleven) {
    auto s = from_amplitudes<double>((Eigen::VectorXcd(4) << 0, 0, 1, 0).finished(), false);
    apply_gate(s, gates::CNOT(0, 1));
    EXPECT_EQ(s.vector(), (Eigen::VectorXcd(4) << 0, 0, 0, 1).finished());
}

TEST(ApplyGate, ZFlipsSignOfSecondHalf) {
    const cd a(0.6, 0.1), b(-0.2, 0.7);
    auto s = from_amplitudes<double>((Eigen::VectorXcd(2) << a, b).finished(), false);
    apply_gate(s, gates::Z(0));
    EXPECT_EQ(s[0], a);
    EXPECT_EQ(s[1], -b);
}

TEST(ApplyGate, OutOfRange) {
    auto s = new_zero_state(2);
    EXPECT_THROW(apply_gate(s, gates::H(2)), ShapeError);
    EXPECT_THROW(apply_gate(s, gates::controlled(gates::H(0), {5})), ShapeError);
}

TEST(ApplyGate, RandomDepth20MatchesKroneckerChain) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        const Circuit c = oracle::random_circuit(6, rng, {.depth = 20});
        auto s = new_zero_state(6);
        for (const auto &g : c.queue()) {
            apply_gate(s, g);
        }
        const Eigen::VectorXcd expected = oracle::circuit_unitary(c).col(0);
        EXPECT_LT((s.vector() - expected).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(ApplyGate, ControlsMatchProjectedOracle) {
    std::mt19937_64 rng(5);
    for (int n = 3; n <= 8; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            auto g = sample_gate(kAllKinds[trial % std::size(kAllKinds)], rng);
            std::vector<int> qs(static_cast<std::size_t>(n));
            std::iota(qs.begin(), qs.end(), 0);
            std::shuffle(qs.begin(), qs.end(), rng);
            const int nt = static_cast<int>(g.targets.size());
            const int nc = std::min(3, n - nt);
            std::vector<int> targets(qs.begin(), qs.begin() + nt);
            std::vector<int> controls(qs.begin() + nt, qs.begin() + nt + nc);
            g.targets = targets;
            g.controls = controls;
            auto s = oracle::random_state(n, rng);
            const auto expected = (oracle::expand_sparse(g, n) * s.vector()).eval();
            apply_gate(s, g);
            EXPECT_LT((s.vector() - expected).cwiseAbs().maxCoeff(), 1e-12)
                << gate_name(g.kind) << " n=" << n;
        }
    }
}

TEST(ApplyGate, ControlZeroSubspaceUntouched) {
    std::mt19937_64 rng(8);
    auto s = oracle::random_state(4, rng);
    const auto before = s;
    apply_gate(s, gates::controlled(gates::H(3), {0, 2}));
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!bits::qubit_value(i, 4, 0) || !bits::qubit_value(i, 4, 2)) {
            EXPECT_EQ(s[i], before[i]) << i;
        }
    }
}

TEST(ApplyGate, NormPreserved) {
    std::mt19937_64 rng(3);
    const Circuit c = oracle::random_circuit(7, rng, {.depth = 200});
    auto s = oracle::random_state(7, rng);
    for (const auto &g : c.queue()) {
        apply_gate(s, g);
        ASSERT_NEAR(norm(s), 1.0, 1e-10) << gate_name(g.kind);
    }
}

TEST(ApplyGate, SelfInverseGatesRestoreInput) {
    std::mt19937_64 rng(4);
    const GateSpec self_inverse[] = {gates::H(1),       gates::X(2),     gates::Y(0),
                                     gates::Z(1),       gates::CNOT(2, 0), gates::CZ(0, 1),
                                     gates::SWAP(1, 2), gates::controlled(gates::SWAP(0, 2), {1})};
    for (const auto &g : self_inverse) {
        auto s = oracle::random_state(3, rng);
        const auto before = s;
        apply_gate(s, g);
        apply_gate(s, g);
        EXPECT_LT(max_abs_diff(s, before), 1e-12) << gate_name(g.kind);
    }
}

TEST(ApplyGate, FastPathsMatchGeneralPath) {
    std::mt19937_64 rng(6);
    const GateSpec perms[] = {gates::X(1), gates::Y(3), gates::CNOT(2, 0), gates::SWAP(0, 3),
                              gates::controlled(gates::X(0), {1, 3}),
                              gates::controlled(gates::SWAP(1, 2), {0})};
    for (const auto &g : perms) {
        auto fast = oracle::random_state(4, rng);
        auto general = fast;
        apply_gate(fast, g, KernelClass::Permutation);
        apply_gate(general, g, KernelClass::General);
        EXPECT_EQ(fast.vector(), general.vector()) << gate_name(g.kind);
    }
    const GateSpec diags[] = {gates::Z(2), gates::RZ(1, 0.37), gates::CZ(3, 1),
                              gates::CZPow(0, 2, 1.1), gates::controlled(gates::RZ(0, 2.0), {3})};
    for (const auto &g : diags) {
        auto fast = oracle::random_state(4, rng);
        auto general = fast;
        apply_gate(fast, g, KernelClass::Diagonal);
        apply_gate(general, g, KernelClass::General);
        EXPECT_LE(max_abs_diff(fast, general), 1e-15) << gate_name(g.kind);
    }
}

TEST(ApplyGate, ForcedPathMustFitMatrix) {
    auto s = new_zero_state(2);
    EXPECT_THROW(apply_gate(s, gates::H(0), KernelClass::Diagonal), ShapeError);
    EXPECT_THROW(apply_gate(s, gates::H(0), KernelClass::Permutation), ShapeError);
}

TEST(ApplyGate, ThreadCountDoesNotChangeResult) {
    std::mt19937_64 rng(9);
    const Circuit c = oracle::random_circuit(14, rng, {.depth = 30, .max_controls = 2});
    const auto init = oracle::random_state(14, rng);
    auto one = init;
    auto many = init;
    {
        ThreadCountGuard guard(1);
        for (const auto &g : c.queue()) {
            apply_gate(one, g);
        }
    }
    {
        ThreadCountGuard guard(4);
        for (const auto &g : c.queue()) {
            apply_gate(many, g);
        }
    }
    EXPECT_LE(max_abs_diff(one, many), 1e-12);
}

TEST(ApplyGate, SinglePrecisionTracksDouble) {
    std::mt19937_64 rng(10);
    const Circuit c = oracle::random_circuit(6, rng, {.depth = 40});
    auto d = new_zero_state<double>(6);
    auto f = new_zero_state<float>(6);
    for (const auto &g : c.queue()) {
        apply_gate(d, g);
        apply_gate(f, g);
    }
    EXPECT_LE(max_abs_diff(f.cast<double>(), d), scaled_tolerance(1e-10, Precision::F32));
    EXPECT_NEAR(norm(f), 1.0f, norm_tolerance(Precision::F32));
}

TEST(Gates, AdjointInverts) {
    std::mt19937_64 rng(12);
    for (auto kind : kAllKinds) {
        auto g = sample_gate(kind, rng);
        g.controls = {2};
        auto s = oracle::random_state(3, rng);
        const auto before = s;
        apply_gate(s, g);
        apply_gate(s, adjoint(g));
        EXPECT_LT(max_abs_diff(s, before), 1e-12) << gate_name(kind);
    }
}

TEST(Gates, SetParametersRebuildsVariationalLayer) {
    std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
    auto g = gates::VariationalLayer(0, 1, p);
    std::vector<double> q = {1.0, -0.5, 2.0, 0.25};
    set_gate_parameters(g, q);
    EXPECT_LT((gate_matrix(g) - gate_matrix(gates::VariationalLayer(0, 1, q))).cwiseAbs().maxCoeff(),
              1e-15);
    EXPECT_THROW(set_gate_parameters(g, std::vector<double>{1.0}), ArityError);
}

} // namespace
} // namespace qsv

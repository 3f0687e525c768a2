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

#include "qsv/bits.hpp"
#include "qsv/error.hpp"
#include "qsv/precision.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>

namespace qsv {

inline constexpr int kMaxQubits = 34;

/**
 * Dense state vector of 2^n complex amplitudes.
 *
 * Amplitude index b encodes the computational basis state with qubit q at
 * bit (n - 1 - q); qubit 0 is the most significant bit. The precision is the
 * scalar type, so operations mixing F32 and F64 states do not compile.
 */
template <typename Real> class StateVector {
  public:
    using RealType = Real;
    using Scalar = std::complex<Real>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    StateVector() = default;

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return static_cast<std::size_t>(amplitudes_.size()); }
    static constexpr Precision precision() { return precision_of<Real>(); }

    std::span<Scalar> amplitudes() { return {amplitudes_.data(), size()}; }
    std::span<const Scalar> amplitudes() const { return {amplitudes_.data(), size()}; }
    const Vector &vector() const { return amplitudes_; }
    Vector &vector() { return amplitudes_; }

    Scalar &operator[](std::size_t i) { return amplitudes_[static_cast<Eigen::Index>(i)]; }
    const Scalar &operator[](std::size_t i) const {
        return amplitudes_[static_cast<Eigen::Index>(i)];
    }

    /// Releases the amplitude storage, leaving the state empty.
    Vector release() && {
        n_qubits_ = 0;
        return std::move(amplitudes_);
    }

    template <typename Other> StateVector<Other> cast() const {
        return StateVector<Other>::adopt(amplitudes_.template cast<std::complex<Other>>());
    }

    /// Wraps an amplitude vector without copying or normalizing.
    /// Throws ShapeError unless the length is a power of two.
    static StateVector adopt(Vector values) {
        const auto len = static_cast<std::size_t>(values.size());
        if (len < 2 || (len & (len - 1)) != 0) {
            throw ShapeError("amplitude count " + std::to_string(len) +
                             " is not a power of two >= 2");
        }
        const int n = std::countr_zero(len);
        if (n > kMaxQubits) {
            throw CapacityError("state exceeds " + std::to_string(kMaxQubits) + " qubits");
        }
        StateVector s;
        s.n_qubits_ = n;
        s.amplitudes_ = std::move(values);
        return s;
    }

  private:
    int n_qubits_ = 0;
    Vector amplitudes_;
};

/// |0...0> on n qubits, 1 <= n <= 34.
template <typename Real = double> StateVector<Real> new_zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw CapacityError("n_qubits must be in [1, " + std::to_string(kMaxQubits) +
                            "], got " + std::to_string(n_qubits));
    }
    typename StateVector<Real>::Vector v =
        StateVector<Real>::Vector::Zero(Eigen::Index{1} << n_qubits);
    v[0] = 1;
    return StateVector<Real>::adopt(std::move(v));
}

/// Builds a state from raw amplitudes, optionally normalizing to unit norm.
template <typename Real>
StateVector<Real> from_amplitudes(Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> values,
                                  bool normalize) {
    if (normalize) {
        const Real nrm = values.norm();
        if (!(nrm > Real{0})) {
            throw DegenerateInputError("cannot normalize a zero amplitude vector");
        }
        values /= nrm;
    }
    return StateVector<Real>::adopt(std::move(values));
}

/// <a|b> = sum_b conj(a_b) b_b.
template <typename Real>
std::complex<Real> overlap(const StateVector<Real> &a, const StateVector<Real> &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw ShapeError("overlap of states with " + std::to_string(a.n_qubits()) + " and " +
                         std::to_string(b.n_qubits()) + " qubits");
    }
    return a.vector().dot(b.vector());
}

template <typename Real> Real norm(const StateVector<Real> &a) { return a.vector().norm(); }

/// Largest amplitude-wise modulus difference.
template <typename Real>
Real max_abs_diff(const StateVector<Real> &a, const StateVector<Real> &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw ShapeError("state size mismatch");
    }
    return (a.vector() - b.vector()).cwiseAbs().maxCoeff();
}

/// Product state |+>^n.
template <typename Real = double> StateVector<Real> plus_state(int n_qubits) {
    auto s = new_zero_state<Real>(n_qubits);
    s.vector().setConstant(std::complex<Real>(std::pow(Real{2}, Real(-0.5) * n_qubits)));
    return s;
}

extern template class StateVector<float>;
extern template class StateVector<double>;

} // namespace qsv

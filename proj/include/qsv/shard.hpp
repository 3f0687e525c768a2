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
#include "qsv/state_vector.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace qsv {

/**
 * A state split into 2^g shards over g global qubits.
 *
 * The amplitudes live in one buffer in a permuted qubit layout: global
 * qubits occupy the most significant slots (global_qubits()[0] first), local
 * qubits the rest. Shard s is the contiguous block whose global bits spell s,
 * so shards are disjoint units of parallel work and no second copy of the
 * state is ever held.
 */
template <typename Real> class ShardedState {
  public:
    using Scalar = std::complex<Real>;
    using Vector = typename StateVector<Real>::Vector;

    int n_qubits() const { return n_qubits_; }
    int n_global() const { return static_cast<int>(global_.size()); }
    int n_local() const { return static_cast<int>(local_.size()); }
    std::size_t n_shards() const { return std::size_t{1} << global_.size(); }
    std::size_t shard_size() const { return std::size_t{1} << local_.size(); }
    const std::vector<int> &global_qubits() const { return global_; }
    const std::vector<int> &local_qubits() const { return local_; }
    static constexpr Precision precision() { return precision_of<Real>(); }

    std::span<Scalar> shard(std::size_t s) {
        return {buffer_.data() + s * shard_size(), shard_size()};
    }
    std::span<const Scalar> shard(std::size_t s) const {
        return {buffer_.data() + s * shard_size(), shard_size()};
    }
    std::span<Scalar> buffer() { return {buffer_.data(), static_cast<std::size_t>(buffer_.size())}; }

    /// Qubit held by each slot, most significant first.
    std::vector<int> layout() const;
    /// Slot currently holding `qubit`.
    int slot_of(int qubit) const;
    bool is_global(int qubit) const;

    /// Exchanges a global with a local qubit by moving half-shards between
    /// shard pairs. Pure data movement; applying it twice restores the
    /// shard contents.
    void reshuffle(int global_qubit, int local_qubit);

    /// Builds from a state, moving global_qubits to the top slots in place.
    static ShardedState from_state(StateVector<Real> state, std::vector<int> global_qubits);
    /// Restores the natural layout and hands the buffer back as a state.
    StateVector<Real> into_state() &&;

  private:
    void swap_slots(int a, int b);

    int n_qubits_ = 0;
    std::vector<int> global_;
    std::vector<int> local_;
    Vector buffer_;
};

/// Requires 1 <= g <= n - 1 distinct global qubits.
template <typename Real>
ShardedState<Real> partition(const StateVector<Real> &state, std::vector<int> global_qubits) {
    return ShardedState<Real>::from_state(state, std::move(global_qubits));
}

template <typename Real>
ShardedState<Real> partition(StateVector<Real> &&state, std::vector<int> global_qubits) {
    return ShardedState<Real>::from_state(std::move(state), std::move(global_qubits));
}

template <typename Real> StateVector<Real> gather(const ShardedState<Real> &sharded) {
    return ShardedState<Real>(sharded).into_state();
}

template <typename Real> StateVector<Real> gather(ShardedState<Real> &&sharded) {
    return std::move(sharded).into_state();
}

/// Gates whose targets are all local, applied shard-parallel.
struct LocalSegment {
    std::vector<std::size_t> gates;
};

/// Global <-> local qubit exchange, done by the coordinator after a barrier.
struct Reshuffle {
    int global_qubit = 0;
    int local_qubit = 0;
};

/// A gate with more targets than there are local qubits; the coordinator
/// applies it on the full buffer.
struct CoordinatorGate {
    std::size_t gate = 0;
};

using PlanStep = std::variant<LocalSegment, Reshuffle, CoordinatorGate>;

struct ExecutionPlan {
    std::vector<int> initial_globals;
    std::vector<PlanStep> steps;

    std::size_t reshuffle_count() const;
    std::size_t segment_count() const;
};

/// The g qubits targeted by the fewest gates (ties: higher index), ascending.
std::vector<int> select_global_qubits(const Circuit &circuit, int n_global);

/// Plans with automatically selected global qubits. n_shards must be a power
/// of two no larger than 2^(n-1).
ExecutionPlan plan(const Circuit &circuit, std::size_t n_shards);

/// Plans from an explicit initial set of global qubits.
ExecutionPlan plan(const Circuit &circuit, std::vector<int> global_qubits);

/// Runs a plan on a sharded state with `n_workers` threads.
template <typename Real>
void execute_plan(const Circuit &circuit, const ExecutionPlan &plan, ShardedState<Real> &state,
                  int n_workers);

/// Sharded execution; equals execute(circuit, initial) up to rounding.
template <typename Real = double>
StateVector<Real> execute_sharded(const Circuit &circuit, std::size_t n_shards, int n_workers,
                                  std::optional<StateVector<Real>> initial = std::nullopt);

extern template class ShardedState<float>;
extern template class ShardedState<double>;

} // namespace qsv

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
#include "qsv/shard.hpp"

#include "qsv/bits.hpp"
#include "qsv/error.hpp"
#include "qsv/kernels.hpp"
#include "qsv/parallel.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <thread>

namespace qsv {

template <typename Real> std::vector<int> ShardedState<Real>::layout() const {
    std::vector<int> out = global_;
    out.insert(out.end(), local_.begin(), local_.end());
    return out;
}

template <typename Real> int ShardedState<Real>::slot_of(int qubit) const {
    const auto g = std::find(global_.begin(), global_.end(), qubit);
    if (g != global_.end()) {
        return static_cast<int>(g - global_.begin());
    }
    const auto l = std::find(local_.begin(), local_.end(), qubit);
    if (l == local_.end()) {
        throw ShapeError("qubit " + std::to_string(qubit) + " not in sharded state");
    }
    return n_global() + static_cast<int>(l - local_.begin());
}

template <typename Real> bool ShardedState<Real>::is_global(int qubit) const {
    return std::find(global_.begin(), global_.end(), qubit) != global_.end();
}

template <typename Real> void ShardedState<Real>::swap_slots(int a, int b) {
    detail::swap_qubit_slots<Real>(buffer(), n_qubits_, a, b, num_threads());
}

template <typename Real> void ShardedState<Real>::reshuffle(int global_qubit, int local_qubit) {
    if (!is_global(global_qubit) || is_global(local_qubit)) {
        throw ShapeError("reshuffle needs one global and one local qubit");
    }
    const int a = slot_of(global_qubit);
    const int b = slot_of(local_qubit);
    swap_slots(a, b);
    global_[a] = local_qubit;
    local_[b - n_global()] = global_qubit;
}

template <typename Real>
ShardedState<Real> ShardedState<Real>::from_state(StateVector<Real> state,
                                                  std::vector<int> global_qubits) {
    const int n = state.n_qubits();
    const auto g = static_cast<int>(global_qubits.size());
    if (g < 1 || g > n - 1) {
        throw ShapeError("number of global qubits must be in [1, n-1], got " +
                         std::to_string(g));
    }
    std::vector<bool> is_global(n, false);
    for (int q : global_qubits) {
        if (q < 0 || q >= n || is_global[q]) {
            throw ShapeError("global qubits must be distinct and in range");
        }
        is_global[q] = true;
    }
    ShardedState out;
    out.n_qubits_ = n;
    out.global_ = std::move(global_qubits);
    for (int q = 0; q < n; ++q) {
        if (!is_global[q]) {
            out.local_.push_back(q);
        }
    }
    out.buffer_ = std::move(state).release();

    // Permute slots from the natural order to globals-then-locals.
    std::vector<int> current(n);
    std::iota(current.begin(), current.end(), 0);
    const std::vector<int> target = out.layout();
    for (int p = 0; p < n; ++p) {
        const int r = static_cast<int>(std::find(current.begin(), current.end(), target[p]) -
                                       current.begin());
        if (r != p) {
            out.swap_slots(p, r);
            std::swap(current[p], current[r]);
        }
    }
    return out;
}

template <typename Real> StateVector<Real> ShardedState<Real>::into_state() && {
    std::vector<int> current = layout();
    for (int p = 0; p < n_qubits_; ++p) {
        const int r =
            static_cast<int>(std::find(current.begin(), current.end(), p) - current.begin());
        if (r != p) {
            swap_slots(p, r);
            std::swap(current[p], current[r]);
        }
    }
    global_.clear();
    local_.clear();
    n_qubits_ = 0;
    return StateVector<Real>::adopt(std::move(buffer_));
}

template class ShardedState<float>;
template class ShardedState<double>;

std::size_t ExecutionPlan::reshuffle_count() const {
    return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const auto &s) {
        return std::holds_alternative<Reshuffle>(s);
    }));
}

std::size_t ExecutionPlan::segment_count() const {
    return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const auto &s) {
        return std::holds_alternative<LocalSegment>(s);
    }));
}

std::vector<int> select_global_qubits(const Circuit &circuit, int n_global) {
    const int n = circuit.n_qubits();
    if (n_global < 1 || n_global > n - 1) {
        throw CapacityError("cannot select " + std::to_string(n_global) +
                            " global qubits from " + std::to_string(n));
    }
    std::vector<std::size_t> uses(n, 0);
    for (const auto &g : circuit.queue()) {
        for (int t : g.targets) {
            ++uses[t];
        }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return uses[a] != uses[b] ? uses[a] < uses[b] : a > b;
    });
    std::vector<int> chosen(order.begin(), order.begin() + n_global);
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

ExecutionPlan plan(const Circuit &circuit, std::size_t n_shards) {
    const int n = circuit.n_qubits();
    if (n_shards == 0 || !std::has_single_bit(n_shards)) {
        throw ShapeError("shard count must be a power of two, got " + std::to_string(n_shards));
    }
    const int g = std::countr_zero(n_shards);
    if (g > n - 1) {
        throw CapacityError(std::to_string(n_shards) + " shards exceed 2^(n-1) for " +
                            std::to_string(n) + " qubits");
    }
    if (g == 0) {
        ExecutionPlan p;
        LocalSegment all;
        for (std::size_t i = 0; i < circuit.size(); ++i) {
            all.gates.push_back(i);
        }
        if (!all.gates.empty()) {
            p.steps.emplace_back(std::move(all));
        }
        return p;
    }
    return plan(circuit, select_global_qubits(circuit, g));
}

ExecutionPlan plan(const Circuit &circuit, std::vector<int> global_qubits) {
    const int n = circuit.n_qubits();
    const auto g = static_cast<int>(global_qubits.size());
    if (g < 1 || g > n - 1) {
        throw CapacityError("number of global qubits must be in [1, n-1]");
    }
    std::vector<bool> global(n, false);
    for (int q : global_qubits) {
        if (q < 0 || q >= n || global[q]) {
            throw ShapeError("global qubits must be distinct and in range");
        }
        global[q] = true;
    }

    // Per-qubit ascending list of gate positions that target it.
    std::vector<std::vector<std::size_t>> target_uses(n);
    for (std::size_t i = 0; i < circuit.size(); ++i) {
        for (int t : circuit[i].targets) {
            target_uses[t].push_back(i);
        }
    }
    auto next_use = [&](int q, std::size_t from) {
        const auto &u = target_uses[q];
        const auto it = std::lower_bound(u.begin(), u.end(), from);
        return it == u.end() ? std::numeric_limits<std::size_t>::max() : *it;
    };

    ExecutionPlan out;
    out.initial_globals = global_qubits;
    LocalSegment segment;
    auto flush = [&] {
        if (!segment.gates.empty()) {
            out.steps.emplace_back(std::move(segment));
            segment = {};
        }
    };
    const int n_local = n - g;

    for (std::size_t i = 0; i < circuit.size(); ++i) {
        const auto &targets = circuit[i].targets;
        const bool needs_move =
            std::any_of(targets.begin(), targets.end(), [&](int t) { return global[t]; });
        if (!needs_move) {
            segment.gates.push_back(i);
            continue;
        }
        if (static_cast<int>(targets.size()) > n_local) {
            flush();
            out.steps.emplace_back(CoordinatorGate{i});
            continue;
        }
        flush();
        for (int t : targets) {
            if (!global[t]) {
                continue;
            }
            // Evict the local qubit whose next targeting is farthest away.
            int best = -1;
            std::size_t best_use = 0;
            for (int q = n - 1; q >= 0; --q) {
                if (global[q] || std::find(targets.begin(), targets.end(), q) != targets.end()) {
                    continue;
                }
                const std::size_t use = next_use(q, i + 1);
                if (best < 0 || use > best_use) {
                    best = q;
                    best_use = use;
                }
            }
            out.steps.emplace_back(Reshuffle{t, best});
            global[t] = false;
            global[best] = true;
        }
        segment.gates.push_back(i);
    }
    flush();
    return out;
}

namespace {

template <typename Real> struct PreparedGate {
    std::vector<int> targets;
    std::vector<int> controls;
    std::size_t global_mask = 0; // required shard-index bits
    Eigen::MatrixXcd matrix;
    KernelClass path;
};

template <typename Real>
PreparedGate<Real> prepare(const GateSpec &gate, const ShardedState<Real> &state) {
    PreparedGate<Real> p;
    const int g = state.n_global();
    for (int t : gate.targets) {
        p.targets.push_back(state.slot_of(t) - g);
    }
    for (int c : gate.controls) {
        const int slot = state.slot_of(c);
        if (slot < g) {
            p.global_mask |= std::size_t{1} << (g - 1 - slot);
        } else {
            p.controls.push_back(slot - g);
        }
    }
    p.matrix = gate_matrix(gate);
    p.path = kernel_class(p.matrix);
    return p;
}

template <typename Real>
void run_segment(const Circuit &circuit, const LocalSegment &segment, ShardedState<Real> &state,
                 int n_workers) {
    std::vector<PreparedGate<Real>> prepared;
    prepared.reserve(segment.gates.size());
    for (std::size_t i : segment.gates) {
        prepared.push_back(prepare(circuit[i], state));
    }
    const std::size_t shards = state.n_shards();
    const int local = state.n_local();
    auto work = [&](std::size_t worker, std::size_t stride) {
        for (std::size_t s = worker; s < shards; s += stride) {
            for (const auto &p : prepared) {
                if ((s & p.global_mask) == p.global_mask) {
                    detail::apply_matrix<Real>(state.shard(s), local, p.targets, p.controls,
                                               p.matrix, p.path, 1);
                }
            }
        }
    };
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(n_workers), shards);
    if (workers <= 1) {
        work(0, 1);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back(work, w, workers);
    }
} // joined here: the barrier before any reshuffle

} // namespace

template <typename Real>
void execute_plan(const Circuit &circuit, const ExecutionPlan &plan, ShardedState<Real> &state,
                  int n_workers) {
    if (n_workers < 1) {
        throw ShapeError("n_workers must be at least 1");
    }
    for (const auto &step : plan.steps) {
        if (const auto *seg = std::get_if<LocalSegment>(&step)) {
            run_segment(circuit, *seg, state, n_workers);
        } else if (const auto *r = std::get_if<Reshuffle>(&step)) {
            state.reshuffle(r->global_qubit, r->local_qubit);
        } else {
            const GateSpec &gate = circuit[std::get<CoordinatorGate>(step).gate];
            std::vector<int> targets;
            std::vector<int> controls;
            for (int t : gate.targets) {
                targets.push_back(state.slot_of(t));
            }
            for (int c : gate.controls) {
                controls.push_back(state.slot_of(c));
            }
            const Eigen::MatrixXcd m = gate_matrix(gate);
            detail::apply_matrix<Real>(state.buffer(), state.n_qubits(), targets, controls, m,
                                       kernel_class(m), num_threads());
        }
    }
}

template <typename Real>
StateVector<Real> execute_sharded(const Circuit &circuit, std::size_t n_shards, int n_workers,
                                  std::optional<StateVector<Real>> initial) {
    if (n_workers < 1) {
        throw ShapeError("n_workers must be at least 1");
    }
    StateVector<Real> state =
        initial ? std::move(*initial) : new_zero_state<Real>(circuit.n_qubits());
    if (state.n_qubits() != circuit.n_qubits()) {
        throw ShapeError("initial state does not match the circuit qubit count");
    }
    const ExecutionPlan p = plan(circuit, n_shards);
    if (n_shards == 1) {
        return execute<Real>(circuit, std::move(state));
    }
    ShardedState<Real> sharded = partition(std::move(state), p.initial_globals);
    execute_plan(circuit, p, sharded, n_workers);
    return gather(std::move(sharded));
}

template void execute_plan<float>(const Circuit &, const ExecutionPlan &, ShardedState<float> &,
                                  int);
template void execute_plan<double>(const Circuit &, const ExecutionPlan &,
                                   ShardedState<double> &, int);
template StateVector<float> execute_sharded<float>(const Circuit &, std::size_t, int,
                                                   std::optional<StateVector<float>>);
template StateVector<double> execute_sharded<double>(const Circuit &, std::size_t, int,
                                                     std::optional<StateVector<double>>);

} // namespace qsv

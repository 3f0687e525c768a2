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
#include "qsv/evolution.hpp"

#include "qsv/error.hpp"
#include "qsv/shard.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>

namespace qsv {
namespace {

using cd = std::complex<double>;
using Vec = Eigen::VectorXcd;
constexpr cd kMinusI{0.0, -1.0};

std::vector<double> step_sizes(const EvolutionConfig &config) {
    if (!(config.dt > 0.0) || !(config.T > 0.0)) {
        throw ShapeError("dt and T must be positive");
    }
    if (config.dt > config.T * (1.0 + 1e-12)) {
        throw ShapeError("dt must not exceed T");
    }
    const double ratio = config.T / config.dt;
    auto full = static_cast<std::size_t>(std::floor(ratio + 1e-9));
    std::vector<double> steps(full, config.dt);
    const double rest = config.T - static_cast<double>(full) * config.dt;
    if (rest > 1e-12 * std::max(1.0, config.T)) {
        steps.push_back(rest);
    }
    return steps;
}

bool wants_hamiltonian(std::span<Callback *const> callbacks) {
    return std::any_of(callbacks.begin(), callbacks.end(),
                       [](const Callback *c) { return c->kind() == CallbackKind::Gap; });
}

void record_all(std::span<Callback *const> callbacks, double t, const StateVector<double> &psi,
                const HamiltonianFn &h_of_t) {
    if (callbacks.empty()) {
        return;
    }
    std::optional<Hamiltonian> current;
    if (wants_hamiltonian(callbacks)) {
        current = h_of_t(t);
    }
    for (Callback *cb : callbacks) {
        cb->record(t, psi, current ? &*current : nullptr);
    }
}

Vec exp_step(const Eigensystem &es, const Vec &psi, double h) {
    const Vec coeffs = es.vectors.adjoint() * psi;
    Vec phased(coeffs.size());
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        phased[i] = std::polar(1.0, -es.values[i] * h) * coeffs[i];
    }
    return es.vectors * phased;
}

Vec derivative(const Hamiltonian &h, const Vec &psi) { return kMinusI * (h.dense().matrix * psi); }

Vec rk4_step(const HamiltonianFn &h_of_t, const Vec &psi, double t, double h) {
    const Hamiltonian h0 = h_of_t(t);
    const Hamiltonian hm = h_of_t(t + h / 2);
    const Hamiltonian h1 = h_of_t(t + h);
    const Vec k1 = derivative(h0, psi);
    const Vec k2 = derivative(hm, psi + (h / 2) * k1);
    const Vec k3 = derivative(hm, psi + (h / 2) * k2);
    const Vec k4 = derivative(h1, psi + h * k3);
    return psi + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dormand-Prince 5(4) tableau; the fifth-order weights advance the state.
Vec rk45_step(const HamiltonianFn &h_of_t, const Vec &psi, double t, double h) {
    static constexpr std::array<double, 6> c{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0};
    static constexpr std::array<std::array<double, 5>, 6> a{{
        {0, 0, 0, 0, 0},
        {1.0 / 5, 0, 0, 0, 0},
        {3.0 / 40, 9.0 / 40, 0, 0, 0},
        {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    }};
    static constexpr std::array<double, 6> b{35.0 / 384,   0.0,          500.0 / 1113,
                                             125.0 / 192, -2187.0 / 6784, 11.0 / 84};
    std::array<Vec, 6> k;
    for (std::size_t s = 0; s < 6; ++s) {
        Vec arg = psi;
        for (std::size_t j = 0; j < s; ++j) {
            if (a[s][j] != 0.0) {
                arg += (h * a[s][j]) * k[j];
            }
        }
        k[s] = derivative(h_of_t(t + c[s] * h), arg);
    }
    Vec out = psi;
    for (std::size_t s = 0; s < 6; ++s) {
        if (b[s] != 0.0) {
            out += (h * b[s]) * k[s];
        }
    }
    return out;
}

StateVector<double> trotter_step(const Hamiltonian &h, StateVector<double> psi, double dt,
                                 const EvolutionConfig &config) {
    const Circuit step = trotter_step_circuit(h.trotter(), dt);
    if (config.shards > 1) {
        return execute_sharded<double>(step, config.shards, config.workers, std::move(psi));
    }
    return execute<double>(step, std::move(psi));
}

void require_dense(const Hamiltonian &h, Solver solver) {
    if (h.form() != HamiltonianForm::Dense) {
        throw FormError(std::string(solver_name(solver)) + " solver requires a dense Hamiltonian");
    }
}

} // namespace

std::string_view solver_name(Solver s) {
    switch (s) {
    case Solver::Exp:
        return "exp";
    case Solver::RK4:
        return "rk4";
    case Solver::RK45:
        return "rk45";
    case Solver::Trotter:
        return "trotter";
    }
    return "?";
}

std::optional<Solver> solver_from_name(std::string_view name) {
    for (Solver s : {Solver::Exp, Solver::RK4, Solver::RK45, Solver::Trotter}) {
        if (solver_name(s) == name) {
            return s;
        }
    }
    return std::nullopt;
}

Schedule Schedule::linear() { return {}; }

Schedule Schedule::polynomial(std::vector<double> coefficients) {
    if (coefficients.empty()) {
        throw ArityError("polynomial schedule needs at least one coefficient");
    }
    const double sum = std::accumulate(coefficients.begin(), coefficients.end(), 0.0);
    if (!(std::abs(sum) > 1e-12)) {
        throw DegenerateInputError("schedule coefficients sum to zero");
    }
    Schedule s;
    s.coefficients_ = std::move(coefficients);
    s.norm_ = sum;
    return s;
}

double Schedule::operator()(double tau) const {
    if (coefficients_.empty()) {
        return tau;
    }
    double value = 0.0;
    double power = tau;
    for (double c : coefficients_) {
        value += c * power;
        power *= tau;
    }
    return value / norm_;
}

Circuit trotter_step_circuit(const TrotterHamiltonian &h, double dt) {
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::vector<bool>> used;
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        const auto &qubits = h.terms[i].qubits;
        if (qubits.size() > 2) {
            throw CapacityError("Trotter terms are limited to 2 qubits");
        }
        std::size_t g = 0;
        for (; g < groups.size(); ++g) {
            if (std::none_of(qubits.begin(), qubits.end(), [&](int q) { return used[g][q]; })) {
                break;
            }
        }
        if (g == groups.size()) {
            groups.emplace_back();
            used.emplace_back(h.n_qubits, false);
        }
        groups[g].push_back(i);
        for (int q : qubits) {
            used[g][q] = true;
        }
    }

    std::vector<Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>> spectra;
    spectra.reserve(h.terms.size());
    for (const auto &term : h.terms) {
        spectra.emplace_back(term.matrix);
    }
    auto term_gate = [&](std::size_t i, double tau) {
        const auto &es = spectra[i];
        const Eigen::VectorXcd phases =
            (es.eigenvalues() * (-tau)).unaryExpr([](double x) { return std::polar(1.0, x); });
        Eigen::MatrixXcd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
        return gates::Unitary(h.terms[i].qubits, std::move(u));
    };

    Circuit c(h.n_qubits);
    const std::size_t m = groups.size();
    for (std::size_t g = 0; g + 1 < m; ++g) {
        for (std::size_t i : groups[g]) {
            c.add(term_gate(i, dt / 2));
        }
    }
    if (m > 0) {
        for (std::size_t i : groups[m - 1]) {
            c.add(term_gate(i, dt));
        }
    }
    for (std::size_t g = m - 1; g-- > 0;) {
        for (std::size_t i : groups[g]) {
            c.add(term_gate(i, dt / 2));
        }
    }
    return c;
}

StateVector<double> evolve(const HamiltonianFn &h_of_t, StateVector<double> psi,
                           const EvolutionConfig &config, std::span<Callback *const> callbacks) {
    const std::vector<double> steps = step_sizes(config);
    double t = 0.0;
    record_all(callbacks, t, psi, h_of_t);
    for (double h : steps) {
        switch (config.solver) {
        case Solver::Exp: {
            const Hamiltonian ham = h_of_t(t + h / 2);
            require_dense(ham, config.solver);
            psi.vector() = exp_step(eigensystem(ham.dense()), psi.vector(), h);
            break;
        }
        case Solver::RK4:
        case Solver::RK45: {
            require_dense(h_of_t(t), config.solver);
            psi.vector() = config.solver == Solver::RK4 ? rk4_step(h_of_t, psi.vector(), t, h)
                                                        : rk45_step(h_of_t, psi.vector(), t, h);
            break;
        }
        case Solver::Trotter: {
            const Hamiltonian ham = h_of_t(t + h / 2);
            if (ham.form() != HamiltonianForm::Trotter) {
                throw FormError("trotter solver requires a Trotter Hamiltonian");
            }
            psi = trotter_step(ham, std::move(psi), h, config);
            break;
        }
        }
        t += h;
        record_all(callbacks, t, psi, h_of_t);
    }
    return psi;
}

StateVector<double> evolve(const Hamiltonian &h, StateVector<double> psi,
                           const EvolutionConfig &config, std::span<Callback *const> callbacks) {
    if (h.n_qubits() != psi.n_qubits()) {
        throw ShapeError("Hamiltonian and state qubit counts differ");
    }
    const HamiltonianFn constant = [&h](double) { return h; };
    if (config.solver != Solver::Exp) {
        return evolve(constant, std::move(psi), config, callbacks);
    }
    require_dense(h, config.solver);
    const std::vector<double> steps = step_sizes(config);
    const Eigensystem es = eigensystem(h.dense());
    double t = 0.0;
    record_all(callbacks, t, psi, constant);
    for (double dt : steps) {
        psi.vector() = exp_step(es, psi.vector(), dt);
        t += dt;
        record_all(callbacks, t, psi, constant);
    }
    return psi;
}

StateVector<double> adiabatic_evolve(const Hamiltonian &h0, const Hamiltonian &h1,
                                     const Schedule &s, const EvolutionConfig &config,
                                     std::span<Callback *const> callbacks,
                                     std::optional<StateVector<double>> psi0) {
    if (h0.form() != h1.form()) {
        throw FormError("adiabatic evolution needs Hamiltonians of the same form");
    }
    if (h0.n_qubits() != h1.n_qubits()) {
        throw ShapeError("adiabatic Hamiltonians act on different qubit counts");
    }
    StateVector<double> start = psi0 ? std::move(*psi0) : ground_state(h0);
    const double T = config.T;
    const HamiltonianFn h_of_t = [&](double t) {
        const double st = s(t / T);
        return combine(h0, 1.0 - st, h1, st);
    };
    return evolve(h_of_t, std::move(start), config, callbacks);
}

ScheduleOptimum optimize_schedule(const Hamiltonian &h0, const Hamiltonian &h1,
                                  std::vector<double> coefficients0, double T0,
                                  const EvolutionConfig &config,
                                  const OptimizerConfig &optimizer) {
    if (coefficients0.empty()) {
        throw ArityError("optimize_schedule needs at least one schedule coefficient");
    }
    if (!(T0 > 0.0)) {
        throw ShapeError("initial total time must be positive");
    }
    const StateVector<double> start = ground_state(h0);
    const double idle_energy = expectation(h1, start);
    const std::size_t m = coefficients0.size();

    // x = (c_0, ..., c_{m-1}, T); T enters through |T|.
    const Objective energy = [&](std::span<const double> x) {
        const double T = std::abs(x[m]);
        if (T < 1e-12) {
            return idle_energy;
        }
        std::vector<double> coeffs(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m));
        Schedule s;
        try {
            s = Schedule::polynomial(std::move(coeffs));
        } catch (const DegenerateInputError &) {
            return idle_energy;
        }
        EvolutionConfig c = config;
        c.T = T;
        c.dt = std::min(config.dt, T);
        return expectation(h1, adiabatic_evolve(h0, h1, s, c, {}, start));
    };

    std::vector<double> x0 = coefficients0;
    x0.push_back(T0);
    const double initial = energy(x0);
    const OptimizeResult r = minimize_nelder_mead(energy, x0, optimizer);
    ScheduleOptimum out;
    out.coefficients.assign(r.x_min.begin(), r.x_min.begin() + static_cast<std::ptrdiff_t>(m));
    out.T = std::abs(r.x_min[m]);
    out.energy = r.f_min;
    out.initial_energy = initial;
    out.evaluations = r.evaluations + 1;
    return out;
}

} // namespace qsv

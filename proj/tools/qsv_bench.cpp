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
// qsv-bench: benchmark harness emitting one JSON record per run.
//
//   qsv-bench qft --nqubits 20 --threads 4 --fuse
//   qsv-bench shots --nqubits 4 --nshots 100000 --seed 7
//   qsv-bench evolve --nqubits 6 --T 1 --dt 0.05 --solver trotter --verify
//   qsv-bench run --circuit circuit.json --shards 4 --workers 2

#include "qsv/qsv.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <thread>

namespace {

using qsv::Circuit;
using qsv::StateVector;
using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct Options {
    int n_qubits = 10;
    std::string precision = "f64";
    int threads = 1;
    std::size_t shards = 1;
    int workers = 1;
    bool fuse = false;
    std::size_t n_shots = 1000;
    std::uint64_t seed = 0;
    double dt = 0.01;
    double T = 1.0;
    std::string solver = "exp";
    int layers = 5;
    int aavqe_steps = 0;
    std::size_t max_evals = 2000;
    std::string circuit_path;
    bool verify = false;
};

int default_threads() {
    if (const char *env = std::getenv("QSIM_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) {
                return n;
            }
        } catch (const std::exception &) {
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

class PhaseTimer {
  public:
    template <typename F> auto time(const std::string &phase, F &&f) {
        const auto start = Clock::now();
        if constexpr (std::is_void_v<std::invoke_result_t<F>>) {
            f();
            add(phase, start);
        } else {
            auto result = f();
            add(phase, start);
            return result;
        }
    }
    Json to_json() const {
        Json out = Json::object();
        for (const auto &[k, v] : phases_) {
            out[k] = v;
        }
        return out;
    }

  private:
    void add(const std::string &phase, Clock::time_point start) {
        phases_[phase] += std::chrono::duration<double>(Clock::now() - start).count();
    }

    std::map<std::string, double> phases_;
};

Json base_record(const std::string &benchmark, const Options &o) {
    Json r;
    r["benchmark"] = benchmark;
    r["n_qubits"] = o.n_qubits;
    r["precision"] = o.precision;
    r["threads"] = o.threads;
    r["shards"] = o.shards;
    r["workers"] = o.workers;
    r["fused"] = o.fuse;
    r["seed"] = o.seed;
    return r;
}

/// Refuses states that cannot fit in physical memory instead of letting the
/// allocation fail (or the OOM killer strike) mid-run.
void check_memory(int n_qubits, std::size_t bytes_per_amplitude) {
    if (n_qubits < 1 || n_qubits > qsv::kMaxQubits) {
        throw qsv::CapacityError("n_qubits must be in [1, " + std::to_string(qsv::kMaxQubits) + "]");
    }
    const long pages = sysconf(_SC_PHYS_PAGES);
    const long page_size = sysconf(_SC_PAGE_SIZE);
    if (pages <= 0 || page_size <= 0) {
        return;
    }
    const double needed = std::ldexp(static_cast<double>(bytes_per_amplitude), n_qubits);
    const double available = static_cast<double>(pages) * static_cast<double>(page_size);
    if (needed > available) {
        throw qsv::CapacityError(std::to_string(n_qubits) + " qubits need " +
                                 std::to_string(needed / (1 << 30)) + " GiB, more than the " +
                                 std::to_string(available / (1 << 30)) + " GiB of physical memory");
    }
}

template <typename Real>
StateVector<Real> run_circuit(const Circuit &circuit, const Options &o,
                              std::optional<StateVector<Real>> initial = std::nullopt) {
    if (o.shards > 1) {
        return qsv::execute_sharded<Real>(circuit, o.shards, o.workers, std::move(initial));
    }
    if (initial) {
        return qsv::execute<Real>(circuit, std::move(*initial));
    }
    return qsv::execute<Real>(circuit);
}

/// Re-executes the unfused circuit on one thread without sharding and
/// compares amplitudes.
template <typename Real>
Json verify_against_single_thread(const Circuit &original, const StateVector<Real> &result) {
    StateVector<Real> reference;
    {
        qsv::ThreadCountGuard guard(1);
        reference = qsv::execute<Real>(original);
    }
    const double diff = static_cast<double>(qsv::max_abs_diff(result, reference));
    const double tol = qsv::scaled_tolerance(1e-12, qsv::precision_of<Real>());
    return Json{{"reference", "single-thread"}, {"max_abs_diff", diff}, {"tolerance", tol},
                {"passed", diff <= tol}};
}

template <typename Real>
Json circuit_benchmark(const std::string &name, const Options &o,
                       const std::function<Circuit()> &build) {
    const auto wall_start = Clock::now();
    PhaseTimer timer;
    Json record = base_record(name, o);
    const Circuit original = timer.time("build", build);
    const Circuit circuit = o.fuse ? timer.time("build", [&] { return qsv::fuse(original); }) : original;
    record["gates"] = original.size();
    record["executed_gates"] = circuit.size();
    const StateVector<Real> state =
        timer.time("apply", [&] { return run_circuit<Real>(circuit, o); });
    if (o.verify) {
        record["verify"] = verify_against_single_thread<Real>(original, state);
    }
    record["wall_seconds"] = std::chrono::duration<double>(Clock::now() - wall_start).count();
    record["phase_seconds"] = timer.to_json();
    return record;
}

Circuit random_variational(const Options &o) {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> params(static_cast<std::size_t>(o.n_qubits) *
                               static_cast<std::size_t>(2 * o.layers + 1));
    for (auto &p : params) {
        p = angle(rng);
    }
    return qsv::variational_circuit(o.n_qubits, o.layers, params, {.fused = o.fuse});
}

std::uint64_t fnv1a(const std::vector<std::uint64_t> &samples) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t s : samples) {
        for (int b = 0; b < 8; ++b) {
            h ^= (s >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    }
    return h;
}

Json shots_record(const qsv::MeasurementResult &r) {
    Json out;
    out["rng"] = r.rng;
    out["samples_fnv1a"] = fnv1a(r.samples);
    if (r.qubits.size() <= 16) {
        Json freq = Json::object();
        for (const auto &[outcome, count] : qsv::binary_frequencies(r)) {
            freq[outcome] = count;
        }
        out["frequencies"] = std::move(freq);
    }
    return out;
}

template <typename Real> Json shots_benchmark(const Options &o) {
    const auto wall_start = Clock::now();
    PhaseTimer timer;
    Json record = base_record("shots", o);
    record["n_shots"] = o.n_shots;
    const Circuit circuit = timer.time("build", [&] {
        Circuit c(o.n_qubits);
        for (int q = 0; q < o.n_qubits; ++q) {
            c.add(qsv::gates::H(q));
        }
        return c;
    });
    const StateVector<Real> state = timer.time("apply", [&] { return run_circuit<Real>(circuit, o); });
    std::vector<int> all(static_cast<std::size_t>(o.n_qubits));
    std::iota(all.begin(), all.end(), 0);
    const auto result = timer.time("sample", [&] { return qsv::sample(state, all, o.n_shots, o.seed); });
    record.update(shots_record(result));
    record["wall_seconds"] = std::chrono::duration<double>(Clock::now() - wall_start).count();
    record["phase_seconds"] = timer.to_json();
    return record;
}

template <typename Real> Json run_file_benchmark(const Options &o) {
    const auto wall_start = Clock::now();
    PhaseTimer timer;
    const Circuit original = timer.time("build", [&] { return qsv::parse_circuit_file(o.circuit_path); });
    check_memory(original.n_qubits(), sizeof(std::complex<Real>));
    Options opts = o;
    opts.n_qubits = original.n_qubits();
    Json record = base_record("run", opts);
    record["circuit"] = o.circuit_path;
    const Circuit circuit = o.fuse ? timer.time("build", [&] { return qsv::fuse(original); }) : original;
    record["gates"] = original.size();
    record["executed_gates"] = circuit.size();
    const StateVector<Real> state = timer.time("apply", [&] { return run_circuit<Real>(circuit, o); });
    if (o.n_shots > 0) {
        std::vector<int> all(static_cast<std::size_t>(original.n_qubits()));
        std::iota(all.begin(), all.end(), 0);
        const auto result =
            timer.time("sample", [&] { return qsv::sample(state, all, o.n_shots, o.seed); });
        record["n_shots"] = o.n_shots;
        record.update(shots_record(result));
    }
    if (o.verify) {
        record["verify"] = verify_against_single_thread<Real>(original, state);
    }
    record["wall_seconds"] = std::chrono::duration<double>(Clock::now() - wall_start).count();
    record["phase_seconds"] = timer.to_json();
    return record;
}

qsv::StateVector<double> adiabatic_tfim(const Options &o, qsv::Solver solver,
                                        const qsv::Hamiltonian &h0, const qsv::Hamiltonian &h1) {
    qsv::EvolutionConfig config{.solver = solver, .dt = o.dt, .T = o.T, .shards = o.shards,
                                .workers = o.workers};
    return qsv::adiabatic_evolve(h0, h1, qsv::Schedule::linear(), config);
}

Json evolve_benchmark(const Options &o) {
    const auto wall_start = Clock::now();
    PhaseTimer timer;
    Json record = base_record("evolve", o);
    record["dt"] = o.dt;
    record["T"] = o.T;
    record["solver"] = o.solver;
    const qsv::Solver solver = *qsv::solver_from_name(o.solver);
    const auto form =
        solver == qsv::Solver::Trotter ? qsv::HamiltonianForm::Trotter : qsv::HamiltonianForm::Dense;
    const auto [h0, h1] = timer.time("build", [&] {
        return std::pair{qsv::build_x(o.n_qubits, form), qsv::build_tfim(o.n_qubits, 1.0, form)};
    });
    const auto state = timer.time("apply", [&] { return adiabatic_tfim(o, solver, h0, h1); });
    record["energy"] = qsv::expectation(h1, state);
    if (o.verify) {
        Json v;
        StateVector<double> single;
        {
            qsv::ThreadCountGuard guard(1);
            Options serial = o;
            serial.shards = 1;
            serial.workers = 1;
            single = adiabatic_tfim(serial, solver, h0, h1);
        }
        v["single_thread_max_abs_diff"] = qsv::max_abs_diff(state, single);
        bool passed = v["single_thread_max_abs_diff"].get<double>() <= 1e-12;
        if (solver != qsv::Solver::Exp && o.n_qubits <= qsv::kMaxDenseQubits) {
            const auto d0 = qsv::build_x(o.n_qubits, qsv::HamiltonianForm::Dense);
            const auto d1 = qsv::build_tfim(o.n_qubits, 1.0, qsv::HamiltonianForm::Dense);
            const auto reference = adiabatic_tfim(o, qsv::Solver::Exp, d0, d1);
            v["exp_overlap_deficit"] = 1.0 - std::norm(qsv::overlap(reference, state));
        }
        v["passed"] = passed;
        record["verify"] = std::move(v);
    }
    record["wall_seconds"] = std::chrono::duration<double>(Clock::now() - wall_start).count();
    record["phase_seconds"] = timer.to_json();
    return record;
}

Json vqe_benchmark(const Options &o) {
    const auto wall_start = Clock::now();
    PhaseTimer timer;
    Json record = base_record("vqe", o);
    record["layers"] = o.layers;
    record["aavqe_steps"] = o.aavqe_steps;
    const auto form =
        o.n_qubits <= qsv::kMaxDenseQubits ? qsv::HamiltonianForm::Dense : qsv::HamiltonianForm::Trotter;
    std::vector<double> x0;
    const auto [h0, h1, ansatz] = timer.time("build", [&] {
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        x0.resize(static_cast<std::size_t>(o.n_qubits) * static_cast<std::size_t>(2 * o.layers + 1));
        for (auto &p : x0) {
            p = angle(rng);
        }
        return std::tuple{qsv::build_x(o.n_qubits, form), qsv::build_tfim(o.n_qubits, 1.0, form),
                          qsv::variational_circuit(o.n_qubits, o.layers, x0)};
    });
    double energy = 0.0;
    timer.time("apply", [&] {
        if (o.aavqe_steps > 0) {
            energy = qsv::aavqe(h0, h1, ansatz, x0, o.aavqe_steps, o.max_evals).energy;
        } else {
            const auto r = qsv::vqe_minimize(qsv::VQEProblem(ansatz, h1), x0, {.max_evals = o.max_evals});
            energy = r.energy;
            record["evaluations"] = r.evaluations;
        }
    });
    record["energy"] = energy;
    if (form == qsv::HamiltonianForm::Dense) {
        record["lambda_min"] = qsv::eigensystem(h1).values[0];
    }
    record["wall_seconds"] = std::chrono::duration<double>(Clock::now() - wall_start).count();
    record["phase_seconds"] = timer.to_json();
    return record;
}

template <typename Real> Json dispatch_circuit(const std::string &name, const Options &o) {
    if (name != "run") {
        check_memory(o.n_qubits, sizeof(std::complex<Real>));
    }
    if (name == "qft") {
        return circuit_benchmark<Real>("qft", o, [&] { return qsv::qft_circuit(o.n_qubits); });
    }
    if (name == "variational") {
        return circuit_benchmark<Real>("variational", o, [&] { return random_variational(o); });
    }
    if (name == "shots") {
        return shots_benchmark<Real>(o);
    }
    return run_file_benchmark<Real>(o);
}

void add_common(CLI::App *cmd, Options &o) {
    cmd->add_option("--nqubits", o.n_qubits, "Number of qubits")->check(CLI::PositiveNumber);
    cmd->add_option("--precision", o.precision, "Amplitude precision")
        ->check(CLI::IsMember({"f32", "f64"}));
    cmd->add_option("--threads", o.threads, "Kernel threads (default: QSIM_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--shards", o.shards, "Number of shards (power of two)")->check(CLI::PositiveNumber);
    cmd->add_option("--workers", o.workers, "Shard worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--fuse", o.fuse, "Fuse gates into two-qubit blocks before execution");
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_flag("--verify", o.verify, "Recompute on the single-thread path and report the difference");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qsv state-vector simulator benchmarks; one JSON record per line"};
    app.require_subcommand(1);
    Options o;
    o.threads = default_threads();

    auto *qft = app.add_subcommand("qft", "Quantum Fourier transform circuit");
    auto *variational = app.add_subcommand("variational", "Layered RY/CZ variational circuit");
    auto *shots = app.add_subcommand("shots", "H on every qubit, then sample all qubits");
    auto *evolve = app.add_subcommand("evolve", "Adiabatic evolution from -sum X to the TFIM");
    auto *vqe = app.add_subcommand("vqe", "VQE (or AAVQE) for the TFIM");
    auto *run = app.add_subcommand("run", "Execute a circuit JSON file");
    for (auto *cmd : {qft, variational, shots, evolve, vqe, run}) {
        add_common(cmd, o);
    }
    for (auto *cmd : {variational, vqe}) {
        cmd->add_option("--layers", o.layers, "Variational layers")->check(CLI::NonNegativeNumber);
    }
    shots->add_option("--nshots", o.n_shots, "Number of shots")->check(CLI::PositiveNumber);
    run->add_option("--nshots", o.n_shots, "Shots to sample after execution (0: none)");
    evolve->add_option("--dt", o.dt, "Time step")->check(CLI::PositiveNumber);
    evolve->add_option("--T", o.T, "Total evolution time")->check(CLI::PositiveNumber);
    evolve->add_option("--solver", o.solver, "Solver")->check(CLI::IsMember({"exp", "rk4", "rk45", "trotter"}));
    vqe->add_option("--aavqe-steps", o.aavqe_steps, "AAVQE interpolation steps (0: plain VQE)")
        ->check(CLI::NonNegativeNumber);
    vqe->add_option("--max-evals", o.max_evals, "Optimizer evaluations per (AA)VQE step")
        ->check(CLI::PositiveNumber);
    run->add_option("--circuit", o.circuit_path, "Circuit JSON file")->required();
    run->callback([&] {
        if (run->count("--nshots") == 0) {
            o.n_shots = 0;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if ((evolve->parsed() || vqe->parsed()) && o.precision != "f64") {
            std::cerr << "error: evolution and VQE run in f64 only\n";
            return kExitUsage;
        }
        qsv::set_num_threads(o.threads);
        Json record;
        if (evolve->parsed()) {
            check_memory(o.n_qubits, sizeof(std::complex<double>));
            record = evolve_benchmark(o);
        } else if (vqe->parsed()) {
            record = vqe_benchmark(o);
        } else {
            const std::string name = app.get_subcommands().front()->get_name();
            record = o.precision == "f32" ? dispatch_circuit<float>(name, o)
                                          : dispatch_circuit<double>(name, o);
        }
        std::cout << record.dump() << std::endl;
        if (record.contains("verify") && !record["verify"]["passed"].get<bool>()) {
            return 1;
        }
    } catch (const qsv::CapacityError &e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::bad_alloc &) {
        std::cerr << "capacity error: out of memory\n";
        return kExitCapacity;
    } catch (const qsv::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}

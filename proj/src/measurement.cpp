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
#include "qsv/measurement.hpp"

#include "qsv/bits.hpp"
#include "qsv/error.hpp"
#include "qsv/parallel.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace qsv {
namespace {

constexpr std::size_t kShotBlock = std::size_t{1} << 14;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string to_bits(std::uint64_t value, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
        if ((value >> (width - 1 - i)) & 1U) {
            s[i] = '1';
        }
    }
    return s;
}

// Positions of `sub` within `qubits`; throws if any is missing.
std::vector<int> positions_in(const std::vector<int> &qubits, const std::vector<int> &sub) {
    std::vector<int> pos;
    for (int q : sub) {
        const auto it = std::find(qubits.begin(), qubits.end(), q);
        if (it == qubits.end()) {
            throw ShapeError("register qubit " + std::to_string(q) + " was not measured");
        }
        pos.push_back(static_cast<int>(it - qubits.begin()));
    }
    return pos;
}

} // namespace

std::string MeasurementResult::binary(std::size_t i) const {
    return to_bits(samples.at(i), qubits.size());
}

void MeasurementResult::add_register(std::string name, std::vector<int> reg) {
    positions_in(qubits, reg);
    registers[std::move(name)] = std::move(reg);
}

template <typename Real>
std::vector<double> marginal_probabilities(const StateVector<Real> &state,
                                           std::span<const int> qubits) {
    const int n = state.n_qubits();
    std::set<int> seen;
    for (int q : qubits) {
        if (q < 0 || q >= n || !seen.insert(q).second) {
            throw ShapeError("measured qubits must be distinct and in range");
        }
    }
    if (qubits.empty()) {
        throw ShapeError("no qubits to measure");
    }
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    const auto amps = state.amplitudes();
    for (bits::Index b = 0; b < amps.size(); ++b) {
        const double re = amps[b].real();
        const double im = amps[b].imag();
        probs[bits::extract_qubits(b, n, qubits)] += re * re + im * im;
    }
    return probs;
}

template <typename Real>
MeasurementResult sample(const StateVector<Real> &state, std::vector<int> qubits,
                         std::size_t n_shots, std::uint64_t seed) {
    if (n_shots < 1) {
        throw ShapeError("n_shots must be at least 1");
    }
    const std::vector<double> probs = marginal_probabilities(state, qubits);
    std::vector<double> cumulative(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
    const double total = cumulative.back();

    MeasurementResult result;
    result.n_shots = n_shots;
    result.qubits = std::move(qubits);
    result.seed = seed;
    result.samples.resize(n_shots);

    // Fixed-size blocks with derived seeds keep the output independent of
    // the thread count.
    const auto blocks = static_cast<std::int64_t>((n_shots + kShotBlock - 1) / kShotBlock);
#pragma omp parallel for schedule(static) num_threads(num_threads()) if (blocks > 1)
    for (std::int64_t blk = 0; blk < blocks; ++blk) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(blk))));
        std::uniform_real_distribution<double> uniform(0.0, total);
        const std::size_t begin = static_cast<std::size_t>(blk) * kShotBlock;
        const std::size_t end = std::min(n_shots, begin + kShotBlock);
        for (std::size_t s = begin; s < end; ++s) {
            const double u = uniform(rng);
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            // Skip zero-probability outcomes that share the last cumulative value.
            if (it == cumulative.end()) {
                it = std::lower_bound(cumulative.begin(), cumulative.end(), total);
            }
            result.samples[s] = static_cast<std::uint64_t>(it - cumulative.begin());
        }
    }
    return result;
}

template std::vector<double> marginal_probabilities<float>(const StateVector<float> &,
                                                           std::span<const int>);
template std::vector<double> marginal_probabilities<double>(const StateVector<double> &,
                                                            std::span<const int>);
template MeasurementResult sample<float>(const StateVector<float> &, std::vector<int>,
                                         std::size_t, std::uint64_t);
template MeasurementResult sample<double>(const StateVector<double> &, std::vector<int>,
                                          std::size_t, std::uint64_t);

std::map<std::uint64_t, std::size_t> frequencies(const MeasurementResult &result,
                                                 const std::optional<std::string> &reg) {
    std::map<std::uint64_t, std::size_t> counts;
    if (!reg) {
        for (auto s : result.samples) {
            ++counts[s];
        }
        return counts;
    }
    const auto it = result.registers.find(*reg);
    if (it == result.registers.end()) {
        throw LookupError("unknown register '" + *reg + "'");
    }
    const std::vector<int> pos = positions_in(result.qubits, it->second);
    const auto width = static_cast<int>(result.qubits.size());
    for (auto s : result.samples) {
        ++counts[bits::extract_qubits(s, width, pos)];
    }
    return counts;
}

std::map<std::string, std::size_t> binary_frequencies(const MeasurementResult &result,
                                                      const std::optional<std::string> &reg) {
    const auto counts = frequencies(result, reg);
    const std::size_t width = reg ? result.registers.at(*reg).size() : result.qubits.size();
    std::map<std::string, std::size_t> out;
    for (const auto &[value, count] : counts) {
        out[to_bits(value, width)] = count;
    }
    return out;
}

} // namespace qsv

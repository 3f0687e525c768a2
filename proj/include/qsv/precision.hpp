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

#include <complex>
#include <string_view>
#include <type_traits>

namespace qsv {

enum class Precision { F32, F64 };

template <typename Real> constexpr Precision precision_of() {
    static_assert(std::is_same_v<Real, float> || std::is_same_v<Real, double>,
                  "qsv supports float and double amplitudes only");
    return std::is_same_v<Real, float> ? Precision::F32 : Precision::F64;
}

constexpr std::string_view to_string(Precision p) {
    return p == Precision::F32 ? "f32" : "f64";
}

/// Norm tolerance of a freshly built or unitarily evolved state.
constexpr double norm_tolerance(Precision p) {
    return p == Precision::F32 ? 1e-4 : 1e-10;
}

/// Scales an F64 bound to the given precision (x1e6 under F32).
constexpr double scaled_tolerance(double f64_bound, Precision p) {
    return p == Precision::F32 ? f64_bound * 1e6 : f64_bound;
}

} // namespace qsv

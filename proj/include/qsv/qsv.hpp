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

#include "qsv/callbacks.hpp"
#include "qsv/circuit.hpp"
#include "qsv/circuit_io.hpp"
#include "qsv/error.hpp"
#include "qsv/evolution.hpp"
#include "qsv/gate.hpp"
#include "qsv/hamiltonian.hpp"
#include "qsv/kernels.hpp"
#include "qsv/measurement.hpp"
#include "qsv/optimize.hpp"
#include "qsv/parallel.hpp"
#include "qsv/shard.hpp"
#include "qsv/state_vector.hpp"
#include "qsv/variational.hpp"

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
#include "qsv/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace qsv {
namespace {
std::atomic<int> &thread_setting() {
    static std::atomic<int> value{
        std::max(1, static_cast<int>(std::thread::hardware_concurrency()))};
    return value;
}
} // namespace

int num_threads() { return thread_setting().load(std::memory_order_relaxed); }

void set_num_threads(int n) {
    thread_setting().store(std::max(1, n), std::memory_order_relaxed);
}

} // namespace qsv

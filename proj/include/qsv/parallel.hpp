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

namespace qsv {

/// Number of threads used by gate kernels and reductions. Defaults to the
/// hardware concurrency.
int num_threads();

/// Sets the kernel thread count; values < 1 are clamped to 1.
void set_num_threads(int n);

/// Restores the previous thread count on scope exit.
class ThreadCountGuard {
  public:
    explicit ThreadCountGuard(int n) : previous_(num_threads()) {
        set_num_threads(n);
    }
    ~ThreadCountGuard() { set_num_threads(previous_); }
    ThreadCountGuard(const ThreadCountGuard &) = delete;
    ThreadCountGuard &operator=(const ThreadCountGuard &) = delete;

  private:
    int previous_;
};

} // namespace qsv

// Copyright 2026 The cilvr Authors
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

#include <cstddef>
#include <functional>

namespace cilvr {

/// Worker count: CI_LVR_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
[[nodiscard]] std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Every index is
/// visited exactly once; callers write results by index so output order never
/// depends on scheduling. The exception thrown at the lowest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x);
    [[nodiscard]] double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace cilvr

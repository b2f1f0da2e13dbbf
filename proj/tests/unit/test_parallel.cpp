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

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "cilvr/parallel.hpp"

using namespace cilvr;

TEST(Parallel, VisitsEveryIndexOnce) {
    setenv("CI_LVR_THREADS", "3", 1);
    EXPECT_EQ(thread_count(), 3u);
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    unsetenv("CI_LVR_THREADS");
    for (int h : hits) {
        EXPECT_EQ(h, 1);
    }
}

TEST(Parallel, RethrowsLowestFailingIndex) {
    setenv("CI_LVR_THREADS", "4", 1);
    try {
        parallel_for(100, [](std::size_t i) {
            if (i == 30 || i == 90) {
                throw std::runtime_error(std::to_string(i));
            }
        });
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "30");
    }
    unsetenv("CI_LVR_THREADS");
}

TEST(Parallel, IgnoresInvalidThreadSetting) {
    setenv("CI_LVR_THREADS", "zero", 1);
    EXPECT_GE(thread_count(), 1u);
    unsetenv("CI_LVR_THREADS");
}

TEST(CompensatedSum, RecoversLostLowOrderBits) {
    CompensatedSum s;
    s.add(1e16);
    for (int i = 0; i < 1000; ++i) {
        s.add(1.0);
    }
    s.add(-1e16);
    EXPECT_EQ(s.value(), 1000.0);
}
